#include "kernelcost/classify.hpp"

#include "kernelcost/error.hpp"

namespace kernelcost {

namespace {

std::string bucket(const Int& s) {
  return s > 4 ? std::string(">4") : s.str();
}

}  // namespace

std::string classify_ratio(const Int& s, const Int& cells, const Int& fill) {
  if (s == 0) return "uniform";
  if (s == 1) return "1/1";
  if (fill <= 0)
    throw Error(Errc::invalid_argument, "empty footprint in classification");
  // q = clamp(ceil(cells*s/fill), 1, 4)
  Int q = (cells * s + fill - 1) / fill;
  if (q < 1) q = 1;
  if (q > 4) q = 4;
  return q.str() + "/" + bucket(s);
}

std::string classify_symbolic(const CountExpr& stride, const CountExpr& cells,
                              const CountExpr& fill, const DecideCtx& dc) {
  if (stride.is_zero()) return "uniform";
  if (stride.is_constant() && stride.constant_value() == 1) return "1/1";

  std::string denom;
  if (stride.is_constant()) {
    const Rat sv = stride.constant_value();
    if (!rat_is_integer(sv) || rat_num(sv) < 2)
      throw Error(Errc::needs_binding, "non-integral constant stride");
    denom = bucket(rat_num(sv));
  } else if (dc.proves_nonneg(stride - CountExpr::from_int(5))) {
    denom = ">4";
  } else {
    throw Error(Errc::needs_binding, "stride bucket undecidable");
  }

  // ceil(u*s) = k  <=>  (k-1)*fill < s*cells <= k*fill, over integers.
  const CountExpr sc = stride * cells;
  const CountExpr one = CountExpr::from_int(1);
  for (int k = 1; k <= 3; ++k) {
    const bool upper = dc.proves_nonneg(fill.scaled(k) - sc);
    if (!upper) continue;
    if (k == 1 || dc.proves_nonneg(sc - fill.scaled(k - 1) - one))
      return std::to_string(k) + "/" + denom;
    break;  // below k yet not provably above k-1: undecided
  }
  if (dc.proves_nonneg(sc - fill.scaled(3) - one)) return "4/" + denom;
  throw Error(Errc::needs_binding, "utilization quantization undecidable");
}

AccessClass classify_access(const KernelIR& k, const AccessRef& acc,
                            const CountExpr& cells, const CountExpr& fill,
                            const AssumeCtx& actx) {
  AccessClass out;
  out.store = acc.is_store;
  out.bits = dtype_bits(acc.array->dtype);
  out.stride = lane_stride(k, acc, actx);
  DecideCtx dc(actx);
  out.cls = classify_symbolic(out.stride, cells, fill, dc);
  return out;
}

}  // namespace kernelcost
