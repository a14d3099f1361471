#include "kernelcost/suite.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "kernelcost/csvio.hpp"
#include "kernelcost/error.hpp"
#include "kernelcost/jsonio.hpp"

namespace kernelcost {

namespace {

std::string num(long v) { return std::to_string(v); }

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

long lcm(long a, long b) {
  long g = a, h = b;
  while (h) {
    const long t = g % h;
    g = h;
    h = t;
  }
  return a / g * b;
}

Binding bind1(long n) { return Binding{{"n", Int(n)}}; }

Binding bind_nmk(long n, long k) {
  return Binding{{"n", Int(n)}, {"k", Int(k)}};
}

Binding bind_nml(long n, long m, long l) {
  return Binding{{"n", Int(n)}, {"m", Int(m)}, {"l", Int(l)}};
}

// Shared header lines for a 2-D kernel over an n x n domain, lane along
// columns: group(0)/local(0) span columns in strides of gx, group(1)/
// local(1) span rows in strides of gy.
std::vector<std::string> axes_2d(long gx, long gy) {
  return {
      "axis g0 = group(0) extent n // " + num(gx),
      "axis g1 = group(1) extent n // " + num(gy),
      "axis l0 = local(0) extent " + num(gx),
      "axis l1 = local(1) extent " + num(gy),
  };
}

std::string assume_2d(long gx, long gy, long floor) {
  std::string s = "assume n % " + num(gx) + " == 0";
  if (gy != gx) s += " and n % " + num(gy) + " == 0";
  s += " and n >= " + num(floor);
  return s;
}

void append(std::vector<std::string>& dst, std::vector<std::string> more) {
  for (auto& l : more) dst.push_back(std::move(l));
}

// ---- kernel text builders ----------------------------------------------

SuiteKernel make_matmul_tiled(long g, const std::string& id,
                              const std::string& role) {
  SuiteKernel k;
  k.id = id;
  k.role = role;
  k.group_config = num(g) + "x" + num(g);
  const std::string G = num(g);
  k.text = join({
      "kernel " + id,
      "param n, m, l",
      "assume n % " + G + " == 0 and m % " + G + " == 0 and l % " + G +
          " == 0 and n >= " + G + " and m >= " + G + " and l >= " + G,
      "array a : f32 [n, m] global row_major in",
      "array b : f32 [m, l] global row_major in",
      "array c : f32 [n, l] global row_major inout",
      "array ta : f32 [" + G + ", " + G + "] local row_major temp",
      "array tb : f32 [" + G + ", " + G + "] local row_major temp",
      "axis g0 = group(0) extent l // " + G,
      "axis g1 = group(1) extent n // " + G,
      "axis l0 = local(0) extent " + G,
      "axis l1 = local(1) extent " + G,
      "loop kk = 0 .. m // " + G,
      "ta[l1, l0] = a[" + G + "*g1 + l1, " + G + "*kk + l0]",
      "tb[l1, l0] = b[" + G + "*kk + l1, " + G + "*g0 + l0]",
      "barrier",
      "loop p = 0 .. " + G,
      "c[" + G + "*g1 + l1, " + G + "*g0 + l0] = c[" + G + "*g1 + l1, " + G +
          "*g0 + l0] + ta[l1, p] * tb[p, l0]",
      "end",
      "barrier",
      "end",
  });
  return k;
}

SuiteKernel make_matmul_naive(long gx, long gy) {
  SuiteKernel k;
  k.id = "matmul_naive_g" + num(gx) + "x" + num(gy);
  k.role = "measurement";
  k.group_config = num(gx) + "x" + num(gy);
  const std::string X = num(gx);
  const std::string Y = num(gy);
  k.text = join({
      "kernel " + k.id,
      "param n, m, l",
      "assume n % " + Y + " == 0 and l % " + X + " == 0 and n >= " + Y +
          " and l >= " + X,
      "array a : f32 [n, m] global row_major in",
      "array b : f32 [m, l] global row_major in",
      "array c : f32 [n, l] global row_major inout",
      "axis g0 = group(0) extent l // " + X,
      "axis g1 = group(1) extent n // " + Y,
      "axis l0 = local(0) extent " + X,
      "axis l1 = local(1) extent " + Y,
      "loop p = 0 .. m",
      "c[" + Y + "*g1 + l1, " + X + "*g0 + l0] = c[" + Y + "*g1 + l1, " + X +
          "*g0 + l0] + a[" + Y + "*g1 + l1, p] * b[p, " + X + "*g0 + l0]",
      "end",
  });
  return k;
}

SuiteKernel make_vecop(int stride, long L) {
  SuiteKernel k;
  k.id = "vecop_s" + num(stride) + "_g" + num(L);
  k.role = "measurement";
  k.group_config = num(L);
  const std::string S = num(stride);
  const std::string shape = stride == 1 ? "n" : S + "*n";
  const std::string idx = stride == 1
                              ? num(L) + "*g0 + l0"
                              : num(stride * L) + "*g0 + " + S + "*l0";
  k.text = join({
      "kernel " + k.id,
      "param n",
      "assume n % " + num(L) + " == 0 and n >= " + num(L),
      "array a0 : f32 [1] global row_major in",
      "array b0 : f32 [1] global row_major in",
      "array x : f32 [" + shape + "] global row_major in",
      "array y : f32 [" + shape + "] global row_major in",
      "array z : f32 [n] global row_major out",
      "axis g0 = group(0) extent n // " + num(L),
      "axis l0 = local(0) extent " + num(L),
      "z[" + num(L) + "*g0 + l0] = a0[0] * x[" + idx + "] + b0[0] * y[" + idx +
          "]",
  });
  return k;
}

SuiteKernel make_transpose_tile(long g) {
  SuiteKernel k;
  k.id = "transpose_tile_g" + num(g) + "x" + num(g);
  k.role = "measurement";
  k.group_config = num(g) + "x" + num(g);
  const std::string G = num(g);
  k.text = join({
      "kernel " + k.id,
      "param n",
      "assume n % " + G + " == 0 and n >= " + G,
      "array a : f32 [n, n] global row_major in",
      "array t : f32 [" + G + ", " + G + "] local row_major temp",
      "array out : f32 [n, n] global row_major out",
      "axis g0 = group(0) extent n // " + G,
      "axis g1 = group(1) extent n // " + G,
      "axis l0 = local(0) extent " + G,
      "axis l1 = local(1) extent " + G,
      "t[l1, l0] = a[" + G + "*g1 + l1, " + G + "*g0 + l0]",
      "barrier",
      "out[" + G + "*g0 + l1, " + G + "*g1 + l0] = t[l0, l1]",
  });
  return k;
}

SuiteKernel make_transpose_direct(long gx, long gy, bool gather) {
  SuiteKernel k;
  k.id = std::string("transpose_") + (gather ? "gather" : "scatter") + "_g" +
         num(gx) + "x" + num(gy);
  k.role = "measurement";
  k.group_config = num(gx) + "x" + num(gy);
  const std::string col = num(gx) + "*g0 + l0";
  const std::string row = num(gy) + "*g1 + l1";
  std::vector<std::string> lines = {
      "kernel " + k.id,
      "param n",
      assume_2d(gx, gy, lcm(gx, gy)),
      "array a : f32 [n, n] global row_major in",
      "array out : f32 [n, n] global row_major out",
  };
  append(lines, axes_2d(gx, gy));
  if (gather)
    lines.push_back("out[" + row + ", " + col + "] = a[" + col + ", " + row +
                    "]");
  else
    lines.push_back("out[" + col + ", " + row + "] = a[" + row + ", " + col +
                    "]");
  k.text = join(lines);
  return k;
}

SuiteKernel make_stride1(int config, long L) {
  static const char* names[] = {"copy", "sum4", "index"};
  SuiteKernel k;
  k.id = std::string("stride1_") + names[config - 1] + "_g" + num(L);
  k.role = "measurement";
  k.group_config = num(L);
  const std::string i = num(L) + "*g0 + l0";
  std::vector<std::string> lines = {
      "kernel " + k.id,
      "param n",
      "assume n % " + num(L) + " == 0 and n >= " + num(L),
  };
  if (config == 1) {
    lines.push_back("array a : f32 [n] global row_major in");
    lines.push_back("array out : f32 [n] global row_major out");
  } else if (config == 2) {
    for (const char* nm : {"a1", "a2", "a3", "a4"})
      lines.push_back(std::string("array ") + nm +
                      " : f32 [n] global row_major in");
    lines.push_back("array out : f32 [n] global row_major out");
  } else {
    lines.push_back("array out : i32 [n] global row_major out");
  }
  lines.push_back("axis g0 = group(0) extent n // " + num(L));
  lines.push_back("axis l0 = local(0) extent " + num(L));
  if (config == 1)
    lines.push_back("out[" + i + "] = a[" + i + "]");
  else if (config == 2)
    lines.push_back("out[" + i + "] = a1[" + i + "] + a2[" + i + "] + a3[" +
                    i + "] + a4[" + i + "]");
  else
    lines.push_back("out[" + i + "] = " + i);
  k.text = join(lines);
  return k;
}

SuiteKernel make_stride_fill(int stride, long L) {
  SuiteKernel k;
  k.id = "stride" + num(stride) + "_fill_g" + num(L);
  k.role = "measurement";
  k.group_config = num(L);
  const std::string S = num(stride);
  k.text = join({
      "kernel " + k.id,
      "param n",
      "assume n % " + num(L) + " == 0 and n >= " + num(L),
      "array a : f32 [" + S + ", 256*n] global column_major in",
      "array out : f32 [n] global row_major inout",
      "axis g0 = group(0) extent n // " + num(L),
      "axis l0 = local(0) extent " + num(L),
      "loop k = 0 .. 256",
      "loop c = 0 .. " + S,
      "out[" + num(L) + "*g0 + l0] = out[" + num(L) + "*g0 + l0] + a[c, " +
          num(256 * L) + "*g0 + " + num(L) + "*k + l0]",
      "end",
      "end",
  });
  return k;
}

SuiteKernel make_arith(const std::string& op, long gx, long gy) {
  SuiteKernel k;
  k.id = "arith_" + op + "_g" + num(gx) + "x" + num(gy);
  k.role = "measurement";
  k.group_config = num(gx) + "x" + num(gy);
  std::string expr;
  if (op == "addsub")
    expr = "1.5 + kk - 2.5 + kk - 3.5 + kk - 4.5 + kk";
  else if (op == "mul")
    expr = "1.5 * kk * 2.5 * kk * 3.5 * kk * 4.5 * kk";
  else if (op == "div")
    expr = "1.5 / (1.5 + kk) / (2.5 + kk) / (3.5 + kk) / (4.5 + kk) / "
           "(5.5 + kk) / 6.5";
  else if (op == "pow")
    expr = "pow(1.5 + kk, 2.5) ^ 0.5 + pow(0.5 + kk, 1.5) ^ 0.5 + "
           "pow(1.5 + kk, 2.0) ^ 0.5";
  else
    expr = "exp(sin(cos(sqrt(rsqrt(exp(1.5 + kk))))))";
  std::vector<std::string> lines = {
      "kernel " + k.id,
      "param n, k",
      assume_2d(gx, gy, lcm(gx, gy)) + " and k >= 1",
      "array out : f32 [n, n] global row_major out",
  };
  append(lines, axes_2d(gx, gy));
  lines.push_back("loop kk = 0 .. k");
  lines.push_back("out[" + num(gy) + "*g1 + l1, " + num(gx) + "*g0 + l0] = " +
                  expr);
  lines.push_back("end");
  k.text = join(lines);
  return k;
}

SuiteKernel make_empty(long gx, long gy) {
  SuiteKernel k;
  k.id = "empty_g" + num(gx) + "x" + num(gy);
  k.role = "measurement";
  k.group_config = num(gx) + "x" + num(gy);
  std::vector<std::string> lines = {
      "kernel " + k.id,
      "param n",
      assume_2d(gx, gy, lcm(gx, gy)),
  };
  append(lines, axes_2d(gx, gy));
  k.text = join(lines);
  return k;
}

SuiteKernel make_fd_stencil() {
  SuiteKernel k;
  k.id = "fd_stencil_g16x16";
  k.role = "test";
  k.group_config = "16x16";
  k.text = join({
      "kernel " + k.id,
      "param n",
      "assume n % 16 == 0 and n >= 16",
      "array a : f32 [n + 2, n + 2] global row_major in",
      "array t : f32 [18, 18] local row_major temp",
      "array out : f32 [n, n] global row_major out",
      "axis g0 = group(0) extent n // 16",
      "axis g1 = group(1) extent n // 16",
      "axis l0 = local(0) extent 16",
      "axis l1 = local(1) extent 16",
      "t[l1 + 1, l0 + 1] = a[16*g1 + l1 + 1, 16*g0 + l0 + 1]",
      "guard l1 == 0",
      "t[0, l0 + 1] = a[16*g1, 16*g0 + l0 + 1]",
      "end",
      "guard l1 == 15",
      "t[17, l0 + 1] = a[16*g1 + 17, 16*g0 + l0 + 1]",
      "end",
      "guard l0 == 0",
      "t[l1 + 1, 0] = a[16*g1 + l1 + 1, 16*g0]",
      "end",
      "guard l0 == 15",
      "t[l1 + 1, 17] = a[16*g1 + l1 + 1, 16*g0 + 17]",
      "end",
      "barrier",
      "out[16*g1 + l1, 16*g0 + l0] = t[l1, l0 + 1] + t[l1 + 2, l0 + 1] + "
      "t[l1 + 1, l0] + t[l1 + 1, l0 + 2] - 4.0 * t[l1 + 1, l0 + 1] + "
      "t[l1 + 1, l0 + 1] ^ 2.0",
  });
  return k;
}

SuiteKernel make_conv() {
  SuiteKernel k;
  k.id = "conv_g16x16";
  k.role = "test";
  k.group_config = "16x16";
  k.text = join({
      "kernel " + k.id,
      "param n",
      "assume n % 16 == 0 and n >= 16",
      "array m : f32 [3, n + 6, n + 6, 3] global row_major in",
      "array f : f32 [3, 7, 7, 3] global row_major in",
      "array out : f32 [3, 3, n, n] global row_major inout",
      "axis g0 = group(0) extent n // 16",
      "axis g1 = group(1) extent n // 16",
      "axis l0 = local(0) extent 16",
      "axis l1 = local(1) extent 16",
      "loop i = 0 .. 3",
      "loop j = 0 .. 3",
      "loop xi = 0 .. 7",
      "loop eta = 0 .. 7",
      "loop c = 0 .. 3",
      "out[i, j, 16*g1 + l1, 16*g0 + l0] = out[i, j, 16*g1 + l1, 16*g0 + l0]"
      " + m[i, 16*g1 + l1 + xi, 16*g0 + l0 + eta, c] * f[j, xi, eta, c]",
      "end",
      "end",
      "end",
      "end",
      "end",
  });
  return k;
}

SuiteKernel make_nbody() {
  SuiteKernel k;
  k.id = "nbody_g256";
  k.role = "test";
  k.group_config = "256";
  const std::string i = "256*g0 + l0";
  k.text = join({
      "kernel " + k.id,
      "param n",
      "assume n % 256 == 0 and n >= 256",
      "array pos : f32 [3, n] global column_major in",
      "array plocal : f32 [3, 256] local column_major temp",
      "array out : f32 [n] global row_major inout",
      "axis g0 = group(0) extent n // 256",
      "axis l0 = local(0) extent 256",
      "loop jb = 0 .. n // 256",
      "loop c = 0 .. 3",
      "plocal[c, l0] = pos[c, 256*jb + l0]",
      "end",
      "barrier",
      "loop jj = 0 .. 256",
      "out[" + i + "] = out[" + i + "] + rsqrt((plocal[0, jj] - pos[0, " + i +
          "])^2.0 + (plocal[1, jj] - pos[1, " + i +
          "])^2.0 + (plocal[2, jj] - pos[2, " + i + "])^2.0)",
      "end",
      "barrier",
      "end",
  });
  return k;
}

// ---- campaign schedules and oracle lattices ----------------------------

void matmul_shape_cases(SuiteKernel& k, long g) {
  for (long s = 2 * g; s <= 16 * g; s *= 2) {
    k.cases.push_back(bind_nml(s, s, s));
    k.cases.push_back(bind_nml(s, s, s / 2));
    k.cases.push_back(bind_nml(s, s / 2, s));
    k.cases.push_back(bind_nml(s / 2, s, s));
  }
}

void geometric_cases(SuiteKernel& k, long base, long ratio, int count) {
  long v = base;
  for (int t = 0; t < count; ++t, v *= ratio) k.cases.push_back(bind1(v));
}

}  // namespace

SuiteLibrary build_suite() {
  SuiteLibrary lib;
  auto add = [&lib](SuiteKernel k) { lib.kernels.push_back(std::move(k)); };

  // Tiled matrix multiplication, square tiles from the 2-D small set.
  for (long g : {12L, 14L, 16L}) {
    SuiteKernel k = make_matmul_tiled(
        g, "matmul_tiled_g" + num(g) + "x" + num(g), "measurement");
    matmul_shape_cases(k, g);
    k.oracle = {{"n", Int(g), 1, 4}, {"m", Int(g), 1, 4}, {"l", Int(g), 1, 4}};
    add(std::move(k));
  }

  for (long gy : {12L, 14L, 16L}) {
    SuiteKernel k = make_matmul_naive(16, gy);
    const long base = lcm(16, gy);
    geometric_cases(k, base, 2, 4);
    for (auto& c : k.cases) {
      c["m"] = c["n"];
      c["l"] = c["n"];
    }
    k.oracle = {{"n", Int(gy), 1, 5}, {"l", Int(16), 1, 4}, {"m", Int(1), 1, 48}};
    add(std::move(k));
  }

  for (int s : {1, 2, 3})
    for (long L : {192L, 224L, 256L}) {
      SuiteKernel k = make_vecop(s, L);
      for (long f : {1L, 4L, 16L, 64L}) k.cases.push_back(bind1(L * f));
      k.oracle = {{"n", Int(L), 1, 30}};
      add(std::move(k));
    }

  for (long g : {12L, 14L, 16L}) {
    SuiteKernel k = make_transpose_tile(g);
    geometric_cases(k, 4 * g, 2, 4);
    k.oracle = {{"n", Int(g), 1, g == 12 ? 26L : g == 14 ? 22L : 20L}};
    add(std::move(k));
  }

  for (bool gather : {true, false})
    for (long gy : {12L, 14L, 16L}) {
      SuiteKernel k = make_transpose_direct(16, gy, gather);
      const long base = lcm(16, gy);
      geometric_cases(k, base == 16 ? 64 : base, 2, 4);
      k.oracle = {{"n", Int(base), 1, base == 48 ? 13L : base == 112 ? 5L : 40L}};
      add(std::move(k));
    }

  for (int cfg : {1, 2, 3})
    for (long L : {192L, 224L, 256L}) {
      SuiteKernel k = make_stride1(cfg, L);
      geometric_cases(k, L, 2, 9);
      k.oracle = {{"n", Int(L), 1, 40}};
      add(std::move(k));
    }

  for (int s : {2, 3})
    for (long L : {192L, 224L, 256L}) {
      SuiteKernel k = make_stride_fill(s, L);
      geometric_cases(k, L, 8, 4);
      const long leaf = 256L * s;  // walk points per thread
      k.oracle = {{"n", Int(L), 1, 1000000L / (leaf * L)}};
      add(std::move(k));
    }

  for (const char* op : {"addsub", "mul", "div", "pow", "special"})
    for (long gy : {12L, 14L, 16L}) {
      SuiteKernel k = make_arith(op, 16, gy);
      const long base = gy == 16 ? 16 : lcm(16, gy);
      for (long kval : {256L, 512L, 728L})
        for (long t = 1; t <= 4; t *= 2)
          k.cases.push_back(bind_nmk(base * t, kval));
      if (gy == 12)
        k.oracle = {{"n", Int(48), 1, 2}, {"k", Int(1), 1, 30}};
      else if (gy == 14)
        k.oracle = {{"n", Int(112), 1, 1}, {"k", Int(1), 1, 25}};
      else
        k.oracle = {{"n", Int(16), 1, 6}, {"k", Int(1), 1, 30}};
      add(std::move(k));
    }

  for (long gy : {12L, 14L, 16L}) {
    SuiteKernel k = make_empty(16, gy);
    const long base = gy == 16 ? 32 : lcm(16, gy);
    geometric_cases(k, base, 2, 6);
    k.oracle = {{"n", Int(lcm(16, gy)), 1, 20}};
    add(std::move(k));
  }

  {
    SuiteKernel k = make_fd_stencil();
    geometric_cases(k, 64, 2, 4);
    k.oracle = {{"n", Int(16), 1, 20}};
    add(std::move(k));
  }
  {
    SuiteKernel k = make_matmul_tiled(16, "matmul_skinny_g16x16", "test");
    for (long s : {64L, 128L, 256L, 512L})
      k.cases.push_back(bind_nml(s, 8 * s, s));
    k.oracle = {{"n", Int(16), 1, 2}};
    k.derived = {{"m", Int(8), "n"}, {"l", Int(1), "n"}};
    add(std::move(k));
  }
  {
    SuiteKernel k = make_conv();
    geometric_cases(k, 16, 2, 4);
    k.oracle = {{"n", Int(16), 1, 1}};
    add(std::move(k));
  }
  {
    SuiteKernel k = make_nbody();
    geometric_cases(k, 256, 2, 4);
    k.oracle = {{"n", Int(256), 1, 3}};
    add(std::move(k));
  }

  return lib;
}

const SuiteKernel* SuiteLibrary::find(const std::string& id) const {
  for (const auto& k : kernels)
    if (k.id == id) return &k;
  return nullptr;
}

static std::vector<SuiteCase> cases_for(const SuiteLibrary& lib,
                                        const std::string& role) {
  std::vector<SuiteCase> out;
  for (const auto& k : lib.kernels) {
    if (k.role != role) continue;
    for (const auto& b : k.cases) out.push_back({k.id, b, k.group_config});
  }
  return out;
}

std::vector<SuiteCase> SuiteLibrary::measurement_cases() const {
  return cases_for(*this, "measurement");
}

std::vector<SuiteCase> SuiteLibrary::test_cases() const {
  return cases_for(*this, "test");
}

Binding sample_oracle_binding(const SuiteKernel& k, std::mt19937_64& rng) {
  if (k.oracle.empty())
    throw Error(Errc::invalid_argument,
                "kernel '" + k.id + "' has no oracle lattice");
  Binding b;
  for (const auto& dim : k.oracle) {
    std::uniform_int_distribution<long> dist(dim.lo, dim.hi);
    b[dim.param] = dim.unit * Int(dist(rng));
  }
  for (const auto& d : k.derived) b[d.param] = d.factor * b.at(d.source);
  return b;
}

void emit_suite(const SuiteLibrary& lib, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::io, "cannot create " + dir + ": " + ec.message());

  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  json klist = json::array();
  for (const auto& k : lib.kernels) {
    const std::string file = k.id + ".knl";
    const std::string path = dir + "/" + file;
    const std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(Errc::io, "cannot open for writing: " + tmp);
      out << k.text;
      if (!out.flush()) throw Error(Errc::io, "write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
      throw Error(Errc::io, "cannot rename " + tmp + " to " + path);

    json entry;
    entry["id"] = k.id;
    entry["file"] = file;
    entry["role"] = k.role;
    entry["group_config"] = k.group_config;
    json cases = json::array();
    for (const auto& b : k.cases) cases.push_back(binding_str(b));
    entry["cases"] = cases;
    json lattice = json::array();
    for (const auto& d : k.oracle)
      lattice.push_back({{"param", d.param},
                         {"unit", static_cast<long>(to_int64(d.unit))},
                         {"lo", d.lo},
                         {"hi", d.hi}});
    entry["oracle"] = lattice;
    klist.push_back(std::move(entry));
  }
  manifest["kernels"] = std::move(klist);
  write_json_file(dir + "/manifest.json", manifest);
}

std::string suite_dir() {
  if (const char* env = std::getenv("KERNELCOST_SUITE_DIR"); env && *env)
    return env;
#ifdef KERNELCOST_BUNDLED_SUITE_DIR
  return KERNELCOST_BUNDLED_SUITE_DIR;
#else
  throw Error(Errc::io, "no suite directory configured");
#endif
}

std::string resolve_kernel_file(const std::string& id) {
  const std::string path = suite_dir() + "/" + id + ".knl";
  if (!std::filesystem::exists(path))
    throw Error(Errc::io, "kernel text not found: " + path);
  return path;
}

}  // namespace kernelcost
