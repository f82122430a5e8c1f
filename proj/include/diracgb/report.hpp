#ifndef DIRACGB_REPORT_HPP
#define DIRACGB_REPORT_HPP

#include <sstream>
#include <string>

#include <json.hpp>

#include "dirac.hpp"

namespace diracgb {

inline constexpr int report_schema_version = 1;

enum class ReportFormat { text, machine };

struct RenderOptions {
  bool timings = false;
};

namespace detail {

inline std::string combination_text(const Constraint& c, const MonomialOrder& ord) {
  std::string s;
  for (std::size_t a = 0; a < c.coefficients.size(); ++a) {
    const auto& k = c.coefficients[a];
    if (k.is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(k, ord) + ")*" + constraint_label(a);
  }
  return s;
}

inline std::string condition_text(const MultiplierCondition& m, const AnalysisReport& r) {
  std::string s;
  for (const auto& [b, coef] : m.coefficients) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(coef, r.order) + ")*" + VariableTable::multiplier_name(b);
  }
  if (!m.u_free.is_zero()) s += " + (" + to_string(m.u_free, r.order) + ")";
  return s + " = 0";
}

inline nlohmann::ordered_json constraint_json(const Constraint& c, std::size_t index, const MonomialOrder& ord,
                                              bool named) {
  nlohmann::ordered_json j;
  if (named) j["name"] = constraint_label(index);
  j["poly"] = to_string(c.poly, ord);
  j["origin"] = origin_name(c.origin);
  if (c.origin == Origin::primary) j["primary_index"] = c.parent;
  if (c.origin == Origin::consistency) {
    j["parent"] = constraint_label(c.parent);
    j["pass"] = c.iteration;
  }
  if (c.origin == Origin::combination) {
    auto coefs = nlohmann::ordered_json::array();
    for (const auto& k : c.coefficients) coefs.push_back(to_string(k, ord));
    j["coefficients"] = coefs;
  }
  j["class"] = class_name(c.tag);
  return j;
}

}  // namespace detail

/// Schema-versioned JSON document; deterministic for identical input.
inline nlohmann::ordered_json report_json(const AnalysisReport& r, const RenderOptions& opts = {}) {
  using nlohmann::ordered_json;
  const auto& ord = r.order;
  ordered_json j;
  j["schema_version"] = report_schema_version;
  j["status"] = status_name(r.status);
  auto vars = ordered_json::array();
  for (const auto& v : r.table->variables()) vars.push_back({{"name", v.name}, {"kind", kind_name(v.kind)}});
  j["variables"] = vars;
  j["order"] = ord.describe(*r.table);
  j["canonical_hamiltonian"] = to_string(r.canonical_hamiltonian, ord);
  j["total_hamiltonian"] = to_string(r.total_hamiltonian, ord);

  auto list = [&](const std::vector<Constraint>& cs, bool named) {
    auto a = ordered_json::array();
    for (std::size_t i = 0; i < cs.size(); ++i) a.push_back(detail::constraint_json(cs[i], i, ord, named));
    return a;
  };
  j["primary"] = list(r.primary, true);
  j["complete"] = list(r.complete, true);
  j["first_class"] = list(r.first_class, false);
  j["second_class"] = list(r.second_class, false);

  if (r.matrix) {
    auto m = ordered_json::array();
    for (const auto& row : r.matrix->entries) {
      auto jr = ordered_json::array();
      for (const auto& x : row) jr.push_back(to_string(x, ord));
      m.push_back(jr);
    }
    j["bracket_matrix"] = m;
    j["rank"] = r.matrix->rank;
  } else {
    j["bracket_matrix"] = nullptr;
    j["rank"] = nullptr;
  }

  auto basis = ordered_json::array();
  for (const auto& g : r.basis) basis.push_back(to_string(g, ord));
  j["basis"] = basis;

  auto conds = ordered_json::array();
  for (const auto& m : r.conditions) {
    ordered_json c;
    c["source"] = constraint_label(m.source);
    c["u_free"] = to_string(m.u_free, ord);
    ordered_json coefs = ordered_json::object();
    for (const auto& [b, coef] : m.coefficients) coefs[VariableTable::multiplier_name(b)] = to_string(coef, ord);
    c["coefficients"] = coefs;
    conds.push_back(c);
  }
  j["multiplier_conditions"] = conds;

  auto eom = ordered_json::array();
  for (const auto& e : r.motion)
    eom.push_back({{"variable", (*r.table)[e.variable].name}, {"rate", to_string(e.rate, ord)}});
  j["equations_of_motion"] = eom;
  j["warnings"] = r.warnings;
  if (opts.timings)
    j["timings"] = {{"hamiltonian_ms", r.timings.hamiltonian_ms},
                    {"completion_ms", r.timings.completion_ms},
                    {"separation_ms", r.timings.separation_ms}};
  return j;
}

inline std::string render_text(const AnalysisReport& r, const RenderOptions& opts = {}) {
  const auto& ord = r.order;
  std::ostringstream o;
  o << "status: " << status_name(r.status) << "\n";
  o << "order: " << ord.describe(*r.table) << "\n";
  o << "canonical Hamiltonian: " << to_string(r.canonical_hamiltonian, ord) << "\n";
  if (r.status != Status::regular) o << "total Hamiltonian: " << to_string(r.total_hamiltonian, ord) << "\n";

  o << "\nconstraints (" << r.complete.size() << ", " << r.primary.size() << " primary):\n";
  for (std::size_t i = 0; i < r.complete.size(); ++i) {
    const auto& c = r.complete[i];
    o << "  " << constraint_label(i) << " = " << to_string(c.poly, ord) << "    [";
    if (c.origin == Origin::primary)
      o << "primary";
    else
      o << "from " << constraint_label(c.parent) << ", pass " << c.iteration;
    o << "]\n";
  }

  if (r.matrix) {
    o << "\nbracket matrix (rank " << r.matrix->rank << "):\n";
    for (const auto& row : r.matrix->entries) {
      o << "  [";
      for (std::size_t b = 0; b < row.size(); ++b) o << (b ? ", " : " ") << to_string(row[b], ord);
      o << " ]\n";
    }
    auto classes = [&](const char* title, const std::vector<Constraint>& cs) {
      o << "\n" << title << " (" << cs.size() << "):\n";
      for (const auto& c : cs) {
        o << "  " << to_string(c.poly, ord);
        if (c.origin == Origin::combination) o << "    = " << detail::combination_text(c, ord);
        o << "\n";
      }
    };
    classes("first class", r.first_class);
    classes("second class", r.second_class);
  }

  if (!r.conditions.empty()) {
    o << "\nmultiplier conditions:\n";
    for (const auto& m : r.conditions)
      o << "  " << constraint_label(m.source) << ": " << detail::condition_text(m, r) << "\n";
  }
  if (!r.motion.empty()) {
    o << "\nequations of motion:\n";
    for (const auto& e : r.motion)
      o << "  d/dt " << (*r.table)[e.variable].name << " = " << to_string(e.rate, ord) << "\n";
  }
  if (!r.warnings.empty()) {
    o << "\nwarnings:\n";
    for (const auto& w : r.warnings) o << "  " << w << "\n";
  }
  if (opts.timings)
    o << "\ntimings: hamiltonian " << r.timings.hamiltonian_ms << " ms, completion " << r.timings.completion_ms
      << " ms, separation " << r.timings.separation_ms << " ms\n";
  return o.str();
}

inline std::string render_report(const AnalysisReport& r, ReportFormat format, const RenderOptions& opts = {}) {
  if (format == ReportFormat::machine) return report_json(r, opts).dump(2) + "\n";
  return render_text(r, opts);
}

}  // namespace diracgb

#endif  // DIRACGB_REPORT_HPP
