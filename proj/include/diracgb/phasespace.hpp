#ifndef DIRACGB_PHASESPACE_HPP
#define DIRACGB_PHASESPACE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "groebner.hpp"

namespace diracgb {

/// The Legendre transform left a velocity in the Hamiltonian: the velocity
/// Hessian does not have constant rank.
class VelocityEliminationFailed : public std::runtime_error {
 public:
  explicit VelocityEliminationFailed(const std::string& what) : std::runtime_error(what) {}
};

/// Polynomial Lagrangian L(q, dq) over a phase-space table.
struct LagrangianSystem {
  TablePtr table;
  Polynomial lagrangian;

  LagrangianSystem(TablePtr t, Polynomial L) : table(std::move(t)), lagrangian(std::move(L)) {
    detail::require_same_table(lagrangian, table);
    if (lagrangian.uses_kind(VarKind::momentum) || lagrangian.uses_kind(VarKind::multiplier) ||
        lagrangian.uses_kind(VarKind::auxiliary))
      throw std::invalid_argument("a Lagrangian may only depend on coordinates and velocities");
  }

  std::size_t dimension() const { return table->pairs(); }
};

struct HamiltonianSystem {
  Polynomial canonical;                // H_c, free of velocities
  std::vector<Polynomial> primary;     // G ∩ Q[p,q], monic
  GroebnerBasis primary_basis;         // reduced basis of <primary>
  GroebnerBasis momenta_basis;         // basis of the momenta relations in Q[p,q,dq]
  MonomialOrder order;

  bool regular() const { return primary.empty(); }
  const TablePtr& table() const { return canonical.table(); }
};

/// {p_i - dL/d(dq_i)}.
inline std::vector<Polynomial> momenta_relations(const LagrangianSystem& sys) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < sys.dimension(); ++i)
    out.push_back(Polynomial::variable(sys.table, sys.table->momentum(i)) -
                  diff(sys.lagrangian, sys.table->velocity(i)));
  return out;
}

inline std::vector<std::size_t> phase_space_variables(const VariableTable& t) {
  auto pq = t.of_kind(VarKind::momentum);
  auto q = t.of_kind(VarKind::coordinate);
  pq.insert(pq.end(), q.begin(), q.end());
  return pq;
}

/// Legendre transform with velocity elimination. `ord` must eliminate the
/// velocities.
inline HamiltonianSystem canonical_hamiltonian(const LagrangianSystem& sys, const MonomialOrder& ord) {
  const auto& table = sys.table;
  auto F = momenta_relations(sys);
  auto G = buchberger(F, ord, table);

  Polynomial legendre = -sys.lagrangian;
  for (std::size_t i = 0; i < sys.dimension(); ++i)
    legendre = legendre + Polynomial::variable(table, table->momentum(i)) *
                              Polynomial::variable(table, table->velocity(i));
  Polynomial hc = G.reduce(legendre);
  if (hc.uses_kind(VarKind::velocity))
    throw VelocityEliminationFailed("canonical Hamiltonian still depends on velocities: " + to_string(hc, ord));

  auto primary = eliminate(G, phase_space_variables(*table));
  auto primary_basis = buchberger(primary, ord, table);
  return HamiltonianSystem{std::move(hc), std::move(primary), std::move(primary_basis), std::move(G), ord};
}

inline HamiltonianSystem canonical_hamiltonian(const LagrangianSystem& sys) {
  return canonical_hamiltonian(sys, MonomialOrder::elimination(*sys.table));
}

/// {f,g} = sum_i df/dp_i dg/dq_i - dg/dp_i df/dq_i. Velocity, multiplier and
/// auxiliary variables are constants here.
inline Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g) {
  const auto table = Polynomial::common_table(f, g);
  Polynomial out(table);
  if (f.is_constant() || g.is_constant()) return out;
  for (std::size_t i = 0; i < table->pairs(); ++i) {
    auto p = table->momentum(i);
    auto q = table->coordinate(i);
    if (!(f.uses(p) || f.uses(q)) || !(g.uses(p) || g.uses(q))) continue;
    out = out + diff(f, p) * diff(g, q) - diff(g, p) * diff(f, q);
  }
  return out;
}

/// H_t together with the wider table carrying one multiplier per primary
/// constraint.
struct TotalHamiltonian {
  Polynomial polynomial;
  std::vector<std::size_t> multipliers;  // variable index of u_alpha
};

/// Table extended with multipliers u_1..u_k, reusing existing ones.
inline TablePtr with_multipliers(const TablePtr& table, std::size_t k) {
  std::vector<Variable> extra;
  for (std::size_t a = 0; a < k; ++a) {
    auto name = VariableTable::multiplier_name(a);
    if (auto idx = table->find(name)) {
      if ((*table)[*idx].kind != VarKind::multiplier)
        throw std::invalid_argument("name '" + name + "' is taken by a non-multiplier");
      continue;
    }
    extra.push_back(Variable{name, VarKind::multiplier, a});
  }
  return extra.empty() ? table : table->extended(extra);
}

/// H_t = H_c + sum_alpha u_alpha phi_alpha over the primary constraints.
inline TotalHamiltonian total_hamiltonian(const HamiltonianSystem& h) {
  if (h.primary.empty()) throw std::invalid_argument("total Hamiltonian of a regular system");
  auto table = with_multipliers(h.table(), h.primary.size());
  TotalHamiltonian out{h.canonical.rebind(table), {}};
  for (std::size_t a = 0; a < h.primary.size(); ++a) {
    auto u = table->index(VariableTable::multiplier_name(a));
    out.multipliers.push_back(u);
    out.polynomial = out.polynomial + Polynomial::variable(table, u) * h.primary[a].rebind(table);
  }
  return out;
}

struct MotionEquation {
  std::size_t variable;  // coordinate or momentum index
  Polynomial rate;       // {H, variable}
};

/// dq_i/dt = {H, q_i} and dp_i/dt = {H, p_i} for every pair.
inline std::vector<MotionEquation> equations_of_motion(const Polynomial& H) {
  const auto& table = H.table();
  std::vector<MotionEquation> out;
  for (std::size_t i = 0; i < table->pairs(); ++i) {
    auto q = table->coordinate(i);
    auto p = table->momentum(i);
    out.push_back({q, poisson_bracket(H, Polynomial::variable(table, q))});
    out.push_back({p, poisson_bracket(H, Polynomial::variable(table, p))});
  }
  return out;
}

}  // namespace diracgb

#endif  // DIRACGB_PHASESPACE_HPP
