#ifndef DIRACGB_DIRAC_HPP
#define DIRACGB_DIRAC_HPP

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phasespace.hpp"

namespace diracgb {

enum class Origin { primary, consistency, combination };
enum class ConstraintClass { unknown, first, second };
enum class Status { regular, consistent, inconsistent, iteration_limit };

inline std::string_view origin_name(Origin o) {
  switch (o) {
    case Origin::primary: return "primary";
    case Origin::consistency: return "consistency";
    case Origin::combination: return "combination";
  }
  return "?";
}

inline std::string_view class_name(ConstraintClass c) {
  switch (c) {
    case ConstraintClass::unknown: return "unknown";
    case ConstraintClass::first: return "first";
    case ConstraintClass::second: return "second";
  }
  return "?";
}

inline std::string_view status_name(Status s) {
  switch (s) {
    case Status::regular: return "regular";
    case Status::consistent: return "consistent";
    case Status::inconsistent: return "inconsistent";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "?";
}

struct Constraint {
  Polynomial poly;  // monic, in Q[p,q]
  Origin origin = Origin::primary;
  // primary: index among primaries; consistency: index of the constraint
  // whose bracket produced it.
  std::size_t parent = no_index;
  std::size_t iteration = 0;
  std::vector<Polynomial> coefficients;  // combination: poly = sum c_a phi_a
  ConstraintClass tag = ConstraintClass::unknown;
};

inline std::vector<Polynomial> polynomials(const std::vector<Constraint>& cs) {
  std::vector<Polynomial> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(c.poly);
  return out;
}

/// Consistency condition of constraint `source` that involves multipliers:
/// u_free + sum coefficient_b * u_b = 0 on the constraint manifold.
struct MultiplierCondition {
  std::size_t source;
  Polynomial u_free;
  std::vector<std::pair<std::size_t, Polynomial>> coefficients;  // multiplier ordinal
};

struct CompletionOptions {
  bool radical_check = false;
  std::optional<std::size_t> max_iterations;
};

struct InsertionRecord {
  std::size_t constraint;
  GroebnerBasis before;
};

struct Completion {
  Status status = Status::consistent;
  Polynomial total_hamiltonian;
  std::vector<std::size_t> multipliers;
  std::vector<Constraint> constraints;
  GroebnerBasis basis;
  std::vector<MultiplierCondition> conditions;
  std::vector<InsertionRecord> trace;
  std::vector<std::string> warnings;
  std::size_t passes = 0;
};

/// Splits a polynomial that is linear in the multipliers into its u-free
/// part and one coefficient per multiplier.
inline std::pair<Polynomial, std::vector<Polynomial>> split_multipliers(
    const Polynomial& h, const std::vector<std::size_t>& multipliers) {
  const auto& table = h.table();
  std::vector<Term> free;
  std::vector<std::vector<Term>> parts(multipliers.size());
  for (const auto& t : h.terms()) {
    std::size_t hit = no_index;
    for (std::size_t b = 0; b < multipliers.size(); ++b) {
      auto e = t.mono[multipliers[b]];
      if (e == 0) continue;
      if (e > 1 || hit != no_index) throw std::logic_error("bracket is not linear in the multipliers");
      hit = b;
    }
    if (hit == no_index) {
      free.push_back(t);
    } else {
      auto exps = t.mono.exponents();
      exps[multipliers[hit]] = 0;
      parts[hit].push_back(Term{Monomial(std::move(exps)), t.coef});
    }
  }
  std::vector<Polynomial> coefs;
  for (auto& p : parts) coefs.push_back(Polynomial::from_terms(table, std::move(p)));
  return {Polynomial::from_terms(table, std::move(free)), std::move(coefs)};
}

inline std::string constraint_label(std::size_t index) { return "phi" + std::to_string(index + 1); }

/// The consistency loop: brackets of H_t with every constraint, reduced modulo
/// the current basis, until nothing new appears, the ideal becomes the whole
/// ring, or the pass cap is hit.
inline Completion complete_constraints(const HamiltonianSystem& h, const CompletionOptions& opts = {}) {
  Completion out;
  out.basis = h.primary_basis;
  if (h.regular()) {
    out.status = Status::regular;
    out.total_hamiltonian = h.canonical;
    return out;
  }

  auto tot = total_hamiltonian(h);
  const auto table = tot.polynomial.table();
  const auto ord = h.order.extended(*table);
  out.total_hamiltonian = tot.polynomial;
  out.multipliers = tot.multipliers;
  for (std::size_t a = 0; a < h.primary.size(); ++a)
    out.constraints.push_back(Constraint{h.primary[a].rebind(table), Origin::primary, a, 0, {}, {}});
  out.basis = h.primary_basis.rebind(table);

  const std::size_t cap = opts.max_iterations.value_or(std::max<std::size_t>(1, 20 * table->pairs()));
  while (true) {
    if (out.passes == cap) {
      out.status = Status::iteration_limit;
      out.warnings.push_back("ITERATION-LIMIT: completion stopped after " + std::to_string(cap) +
                             " passes without reaching a fixpoint");
      return out;
    }
    ++out.passes;
    out.conditions.clear();
    bool inserted = false;
    for (std::size_t a = 0; a < out.constraints.size() && !inserted; ++a) {
      auto bracket = poisson_bracket(out.total_hamiltonian, out.constraints[a].poly);
      auto [free, parts] = split_multipliers(bracket, out.multipliers);

      MultiplierCondition cond{a, out.basis.reduce(free), {}};
      for (std::size_t b = 0; b < parts.size(); ++b) {
        auto r = out.basis.reduce(parts[b]);
        if (!r.is_zero()) cond.coefficients.emplace_back(b, std::move(r));
      }
      if (!cond.coefficients.empty()) {
        out.conditions.push_back(std::move(cond));
        continue;
      }
      if (cond.u_free.is_zero()) continue;

      auto gens = polynomials(out.constraints);
      if (opts.radical_check && radical_member(cond.u_free, gens, ord.blocks().front().base)) {
        out.warnings.push_back("NON-RADICAL: consistency condition of " + constraint_label(a) + " reduces to " +
                               to_string(cond.u_free, ord) +
                               ", which lies in the radical but not in the ideal; not added");
        continue;
      }

      std::size_t index = out.constraints.size();
      out.trace.push_back(InsertionRecord{index, out.basis});
      out.constraints.push_back(
          Constraint{make_monic(cond.u_free, ord), Origin::consistency, a, out.passes, {}, {}});
      gens.push_back(out.constraints.back().poly);
      out.basis = buchberger(gens, ord, table);
      inserted = true;

      if (out.basis.is_unit()) {
        out.status = Status::inconsistent;
        out.conditions.clear();
        out.warnings.push_back("INCONSISTENT: consistency condition of " + constraint_label(a) + " (" +
                               to_string(out.constraints[a].poly, ord) + ") yields " +
                               to_string(cond.u_free, ord) + "; the constraint ideal is the whole ring");
        return out;
      }
    }
    if (!inserted) break;
  }
  out.status = Status::consistent;
  return out;
}

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Gauss-Jordan form of a polynomial matrix over Q[p,q]/<G>.
struct Echelon {
  PolyMatrix rows;
  std::vector<std::size_t> pivot_cols;
  bool nonconstant_pivot = false;
};

/// Fraction-free Gauss-Jordan elimination where every intermediate entry is
/// replaced by its normal form modulo G. A pivot must have nonzero normal
/// form; constant pivots are preferred and scaled to 1. With a non-constant
/// pivot the result is the generic rank of the matrix over the quotient.
inline Echelon echelon_mod_ideal(const PolyMatrix& M, const GroebnerBasis& G) {
  Echelon e;
  e.rows = M;
  const std::size_t m = M.size();
  const std::size_t n = m ? M.front().size() : 0;
  for (auto& row : e.rows) {
    if (row.size() != n) throw std::invalid_argument("ragged matrix");
    for (auto& x : row) x = G.reduce(x);
  }

  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t pick = no_index;
    for (std::size_t i = r; i < m; ++i) {
      const auto& x = e.rows[i][c];
      if (x.is_zero()) continue;
      if (x.is_constant()) {
        pick = i;
        break;
      }
      if (pick == no_index) pick = i;
    }
    if (pick == no_index) continue;
    std::swap(e.rows[r], e.rows[pick]);

    auto& prow = e.rows[r];
    Polynomial pivot = prow[c];
    if (pivot.is_constant()) {
      Rational inv = 1 / pivot.constant_term();
      for (auto& x : prow) x = inv * x;
      pivot = prow[c];
    } else {
      e.nonconstant_pivot = true;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || e.rows[i][c].is_zero()) continue;
      Polynomial factor = e.rows[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        auto x = pivot.is_constant() ? e.rows[i][j] - factor * prow[j]
                                     : pivot * e.rows[i][j] - factor * prow[j];
        e.rows[i][j] = G.reduce(x);
      }
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  return e;
}

inline std::size_t rank_mod_ideal(const PolyMatrix& M, const GroebnerBasis& G) {
  return echelon_mod_ideal(M, G).pivot_cols.size();
}

/// Clears denominators, removes the integer content and makes the leading
/// coefficient of the first nonzero entry positive.
inline std::vector<Polynomial> normalize_vector(std::vector<Polynomial> v, const MonomialOrder& ord) {
  Integer den = 1, content = 0;
  for (const auto& x : v)
    for (const auto& t : x.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coef.get_den_mpz_t());
  for (auto& x : v) {
    x = Rational(den) * x;
    for (const auto& t : x.terms()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), t.coef.get_num_mpz_t());
  }
  if (content == 0) return v;
  Rational scale(Integer(1), content);
  for (const auto& x : v)
    if (!x.is_zero()) {
      if (leading_term(x, ord).coef < 0) scale = -scale;
      break;
    }
  for (auto& x : v) x = scale * x;
  return v;
}

/// Basis of {a : M a = 0 modulo G}; one vector per non-pivot column, in
/// column order.
inline std::vector<std::vector<Polynomial>> nullspace_mod_ideal(const PolyMatrix& M, const GroebnerBasis& G,
                                                                std::size_t columns) {
  auto e = echelon_mod_ideal(M, G);
  const auto& table = G.table();
  std::vector<bool> is_pivot(columns, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Polynomial>> out;
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Polynomial> a(columns, Polynomial(table));
    // Over the rows i with R_{i,f} != 0: a_f = prod P_i and
    // a_{c_i} = -R_{i,f} prod_{k != i} P_k.
    std::vector<std::size_t> involved;
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
      if (!e.rows[i][f].is_zero()) involved.push_back(i);
    Polynomial all = Polynomial::constant(table, 1);
    for (auto i : involved) all = G.reduce(all * e.rows[i][e.pivot_cols[i]]);
    a[f] = all;
    for (auto i : involved) {
      Polynomial others = Polynomial::constant(table, 1);
      for (auto k : involved)
        if (k != i) others = G.reduce(others * e.rows[k][e.pivot_cols[k]]);
      a[e.pivot_cols[i]] = G.reduce(-(e.rows[i][f] * others));
    }
    out.push_back(normalize_vector(std::move(a), G.order()));
  }
  return out;
}

inline std::vector<std::vector<Polynomial>> nullspace_mod_ideal(const PolyMatrix& M, const GroebnerBasis& G) {
  if (M.empty()) throw std::invalid_argument("column count of an empty matrix is unknown");
  return nullspace_mod_ideal(M, G, M.front().size());
}

struct BracketMatrix {
  PolyMatrix entries;
  std::size_t rank = 0;
  bool generic_rank = false;  // a non-constant pivot was used
};

inline BracketMatrix bracket_matrix(const std::vector<Polynomial>& constraints, const GroebnerBasis& G) {
  BracketMatrix bm;
  const auto k = constraints.size();
  bm.entries.assign(k, std::vector<Polynomial>(k, Polynomial(G.table())));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b) bm.entries[a][b] = G.reduce(poisson_bracket(constraints[a], constraints[b]));
  auto e = echelon_mod_ideal(bm.entries, G);
  bm.rank = e.pivot_cols.size();
  bm.generic_rank = e.nonconstant_pivot;
  return bm;
}

struct Separation {
  std::vector<Constraint> first;
  std::vector<Constraint> second;
  BracketMatrix matrix;
  std::vector<std::string> warnings;
};

/// sum_a c_a phi_a made monic, with the coefficients scaled to match.
inline std::optional<Constraint> combine(const std::vector<Constraint>& constraints,
                                         const std::vector<Polynomial>& coefficients, const MonomialOrder& ord,
                                         ConstraintClass tag) {
  Polynomial sum(constraints.front().poly.table());
  for (std::size_t a = 0; a < constraints.size(); ++a)
    if (!coefficients[a].is_zero()) sum = sum + coefficients[a] * constraints[a].poly;
  if (sum.is_zero()) return std::nullopt;
  Rational scale = 1 / leading_term(sum, ord).coef;
  Constraint c{scale * sum, Origin::combination, no_index, 0, {}, tag};
  for (const auto& x : coefficients) c.coefficients.push_back(scale * x);
  return c;
}

/// First/second class separation from the kernel of the bracket matrix.
inline Separation separate(const std::vector<Constraint>& constraints, const GroebnerBasis& G) {
  Separation s;
  const auto k = constraints.size();
  s.matrix = bracket_matrix(polynomials(constraints), G);
  if (s.matrix.generic_rank)
    s.warnings.push_back("GENERIC-RANK: a non-constant pivot was used; the rank holds generically on the "
                         "constraint manifold");
  if (s.matrix.rank % 2 != 0)
    s.warnings.push_back("ODD-RANK: bracket matrix rank " + std::to_string(s.matrix.rank) + " is odd");
  if (k == 0) return s;

  auto tagged = [&](ConstraintClass tag) {
    auto cs = constraints;
    for (auto& c : cs) c.tag = tag;
    return cs;
  };
  if (s.matrix.rank == k) {
    s.second = tagged(ConstraintClass::second);
    return s;
  }
  if (s.matrix.rank == 0) {
    s.first = tagged(ConstraintClass::first);
    return s;
  }

  const auto& ord = G.order();
  auto A = nullspace_mod_ideal(s.matrix.entries, G, k);
  for (const auto& a : A) {
    if (auto c = combine(constraints, a, ord, ConstraintClass::first)) s.first.push_back(std::move(*c));
    else s.warnings.push_back("ZERO-COMBINATION: a first class combination vanished identically");
  }
  auto B = nullspace_mod_ideal(A, G, k);
  for (const auto& b : B) {
    if (auto c = combine(constraints, b, ord, ConstraintClass::second)) s.second.push_back(std::move(*c));
    else s.warnings.push_back("ZERO-COMBINATION: a second class combination vanished identically");
  }
  if (s.second.size() != s.matrix.rank)
    s.warnings.push_back("COUNT-MISMATCH: " + std::to_string(s.second.size()) +
                         " second class constraints for bracket matrix rank " + std::to_string(s.matrix.rank));
  return s;
}

/// Combinations of multiplier conditions that cancel every multiplier but
/// leave a nonzero u-free part. These are constraints a full analysis of
/// the multiplier system would add; they are reported, not added.
inline std::vector<Polynomial> hidden_condition_candidates(const Completion& c) {
  std::vector<Polynomial> out;
  if (c.conditions.empty()) return out;
  const auto rows = c.conditions.size();
  const auto cols = c.multipliers.size();
  PolyMatrix transposed(cols, std::vector<Polynomial>(rows, Polynomial(c.basis.table())));
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& [b, coef] : c.conditions[i].coefficients) transposed[b][i] = coef;
  for (const auto& w : nullspace_mod_ideal(transposed, c.basis, rows)) {
    Polynomial sum(c.basis.table());
    for (std::size_t i = 0; i < rows; ++i) sum = sum + w[i] * c.conditions[i].u_free;
    sum = c.basis.reduce(sum);
    if (!sum.is_zero()) out.push_back(make_monic(sum, c.basis.order()));
  }
  return out;
}

struct AnalysisOptions {
  BaseOrder order = BaseOrder::degrevlex;
  bool radical_check = false;
  std::optional<std::size_t> max_iterations;
  bool equations_of_motion = false;
};

struct Timings {
  double hamiltonian_ms = 0;
  double completion_ms = 0;
  double separation_ms = 0;
};

struct AnalysisReport {
  Status status = Status::regular;
  TablePtr table;
  MonomialOrder order;
  Polynomial canonical_hamiltonian;
  Polynomial total_hamiltonian;
  std::vector<Constraint> primary;
  std::vector<Constraint> complete;
  std::vector<Constraint> first_class;
  std::vector<Constraint> second_class;
  std::optional<BracketMatrix> matrix;
  std::vector<MultiplierCondition> conditions;
  std::vector<MotionEquation> motion;
  std::vector<std::string> warnings;
  std::vector<Polynomial> basis;
  Timings timings;
};

/// The whole pipeline: Legendre transform, completion, separation.
inline AnalysisReport analyze(const LagrangianSystem& sys, const AnalysisOptions& opts = {}) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  AnalysisReport r;
  auto t0 = clock::now();
  auto h = canonical_hamiltonian(sys, MonomialOrder::elimination(*sys.table, opts.order));
  auto t1 = clock::now();
  r.timings.hamiltonian_ms = ms(t0, t1);

  auto c = complete_constraints(h, CompletionOptions{opts.radical_check, opts.max_iterations});
  auto t2 = clock::now();
  r.timings.completion_ms = ms(t1, t2);

  r.status = c.status;
  r.table = c.total_hamiltonian.table();
  r.order = h.order.extended(*r.table);
  r.canonical_hamiltonian = h.canonical.rebind(r.table);
  r.total_hamiltonian = c.total_hamiltonian;
  r.complete = c.constraints;
  for (const auto& k : c.constraints)
    if (k.origin == Origin::primary) r.primary.push_back(k);
  r.conditions = c.conditions;
  r.warnings = c.warnings;
  for (const auto& g : c.basis.elements()) r.basis.push_back(g.rebind(r.table));
  if (opts.equations_of_motion) r.motion = equations_of_motion(r.total_hamiltonian);

  if (c.status == Status::consistent) {
    auto sep = separate(c.constraints, c.basis);
    r.first_class = std::move(sep.first);
    r.second_class = std::move(sep.second);
    r.matrix = std::move(sep.matrix);
    if (r.matrix->rank == 0 || r.matrix->rank == r.complete.size())
      for (auto& k : r.complete) k.tag = r.matrix->rank == 0 ? ConstraintClass::first : ConstraintClass::second;
    r.warnings.insert(r.warnings.end(), sep.warnings.begin(), sep.warnings.end());
    for (const auto& cand : hidden_condition_candidates(c))
      r.warnings.push_back("DEGENERATE-MULTIPLIERS: the multiplier conditions imply " + to_string(cand, r.order) +
                           " = 0, which was not added");
  }
  r.timings.separation_ms = ms(t2, clock::now());
  return r;
}

}  // namespace diracgb

#endif  // DIRACGB_DIRAC_HPP
