#include "kernelcost/validate.hpp"

#include <set>
#include <sstream>

namespace kernelcost {

std::string format_diagnostics(const std::vector<Diagnostic>& ds) {
  std::ostringstream os;
  for (const auto& d : ds)
    os << d.code << " (" << d.where << "): " << d.message << "\n";
  return os.str();
}

namespace {

void check_idents(const KernelIR& k, std::vector<Diagnostic>& out) {
  std::set<std::string> seen;
  auto note = [&](const std::string& name, const char* what) {
    if (!seen.insert(name).second)
      out.push_back({"E_DUP_IDENT", name,
                     std::string("duplicate declaration of ") + what + " '" +
                         name + "'"});
  };
  for (const auto& p : k.params) note(p.name, "parameter");
  for (const auto& a : k.arrays) note(a.name, "array");
  for (const auto& a : k.axes) note(a.name, "axis");
  walk_stmts(k, [&](const Stmt& s, const std::vector<const Stmt*>&) {
    if (s.kind == Stmt::Kind::loop) note(s.loop_var, "loop variable");
  });
}

void check_axes(const KernelIR& k, std::vector<Diagnostic>& out) {
  int n_group = 0, n_local = 0;
  std::set<std::pair<bool, int>> indices;
  for (const auto& a : k.axes) {
    (a.is_group ? n_group : n_local) += 1;
    if (a.index < 0 || a.index > 2)
      out.push_back({"E_AXIS_LIMIT", a.name,
                     "axis index must be 0, 1, or 2"});
    else if (!indices.insert({a.is_group, a.index}).second)
      out.push_back({"E_AXIS_INDEX_DUP", a.name,
                     std::string(a.is_group ? "group" : "local") + "(" +
                         std::to_string(a.index) + ") declared twice"});
    if (!a.is_group) {
      if (!a.extent.is_constant() || !rat_is_integer(a.extent.constant) ||
          a.extent.constant <= 0)
        out.push_back({"E_LOCAL_EXTENT_PARAM", a.name,
                       "local axis extent must be a positive integer "
                       "constant"});
    }
  }
  if (n_group > 3)
    out.push_back({"E_AXIS_LIMIT", k.name, "more than 3 group axes"});
  if (n_local > 3)
    out.push_back({"E_AXIS_LIMIT", k.name, "more than 3 local axes"});
}

void check_arrays(const KernelIR& k, std::vector<Diagnostic>& out) {
  for (const auto& a : k.arrays) {
    if (a.space != Space::local) continue;
    for (const auto& e : a.shape) {
      if (!e.is_constant() || !rat_is_integer(e.constant) ||
          e.constant <= 0) {
        out.push_back({"E_LOCAL_SHAPE_PARAM", a.name,
                       "local array shape must be positive integer "
                       "constants"});
        break;
      }
    }
    if (a.intent != Intent::temp)
      out.push_back({"E_LOCAL_INTENT", a.name,
                     "local arrays must have intent temp"});
  }
}

void check_accesses(const KernelIR& k, std::vector<Diagnostic>& out) {
  for (const auto& acc : collect_accesses(k)) {
    if (!acc.array) continue;  // parser rejects undeclared arrays
    const std::string where =
        "line " + std::to_string(acc.stmt->line);
    if (acc.is_store && acc.array->intent == Intent::in)
      out.push_back({"E_WRITE_READONLY", where,
                     "assignment writes read-only array '" +
                         acc.array->name + "'"});
    if (acc.indices->size() != acc.array->shape.size())
      out.push_back({"E_RANK_MISMATCH", where,
                     "array '" + acc.array->name + "' has rank " +
                         std::to_string(acc.array->shape.size()) + ", got " +
                         std::to_string(acc.indices->size())});
  }
}

}  // namespace

std::vector<Diagnostic> validate(const KernelIR& k) {
  std::vector<Diagnostic> out;
  check_idents(k, out);
  check_axes(k, out);
  check_arrays(k, out);
  check_accesses(k, out);
  return out;
}

}  // namespace kernelcost
