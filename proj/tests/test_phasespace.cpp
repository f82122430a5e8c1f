#include <gtest/gtest.h>

#include <random>

#include "testing.hpp"

using namespace diracgb;
using diracgb::testing::load_fixture;
using diracgb::testing::P;
using diracgb::testing::random_polynomial;

namespace {

std::vector<std::string> printed(const std::vector<Polynomial>& ps, const MonomialOrder& ord) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(to_string(p, ord));
  return out;
}

}  // namespace

TEST(Legendre, LinearPotential) {
  auto prob = load_fixture("linear_potential.lag");
  auto h = canonical_hamiltonian(prob.system);
  const auto& t = prob.system.table;
  EXPECT_EQ(h.canonical, P(t, "1/2*p_q1^2 - q2"));
  EXPECT_EQ(printed(h.primary, h.order), (std::vector<std::string>{"p_q2"}));
  EXPECT_FALSE(h.regular());
}

TEST(Legendre, YangMillsZeroPlusOne) {
  auto prob = load_fixture("su2_ym_0p1.lag");
  auto h = canonical_hamiltonian(prob.system);
  const auto& t = prob.system.table;
  EXPECT_EQ(h.canonical, P(t, "1/2*(p_x1^2 + p_x2^2 + p_x3^2)"
                               " - p_x1*(y2*x3 - y3*x2) - p_x2*(y3*x1 - y1*x3) - p_x3*(y1*x2 - y2*x1)"));
  EXPECT_EQ(printed(h.primary, h.order), (std::vector<std::string>{"p_y1", "p_y2", "p_y3"}));
}

TEST(Legendre, Rotator) {
  auto prob = load_fixture("rotator.lag");
  auto h = canonical_hamiltonian(prob.system);
  const auto& t = prob.system.table;
  EXPECT_EQ(h.canonical, P(t, "1/2*(p_q1^2 + p_q2^2 + p_q3^2) - lam*(q1^2 + q2^2 + q3^2 - 1)"));
  EXPECT_EQ(printed(h.primary, h.order), (std::vector<std::string>{"p_lam"}));
}

TEST(Legendre, MixedClassFirstOrderModel) {
  auto prob = load_fixture("mixed_class.lag");
  auto h = canonical_hamiltonian(prob.system);
  const auto& t = prob.system.table;
  EXPECT_EQ(h.canonical, P(t, "q1*q3"));
  auto expected = buchberger({P(t, "p_q1 + q2"), P(t, "p_q2 - q1"), P(t, "p_q3")}, h.order, t);
  EXPECT_EQ(h.primary_basis, expected);
  EXPECT_EQ(h.primary.size(), 3u);
}

TEST(Legendre, RegularSystemHasNoPrimaries) {
  auto prob = load_fixture("regular.lag");
  auto h = canonical_hamiltonian(prob.system);
  EXPECT_TRUE(h.regular());
  EXPECT_EQ(h.canonical, P(prob.system.table, "1/2*p_q1^2 + 1/2*p_q2^2"));
  EXPECT_THROW(total_hamiltonian(h), std::invalid_argument);
}

TEST(Legendre, FailedVelocityElimination) {
  auto prob = load_fixture("cubic.lag");
  EXPECT_THROW(canonical_hamiltonian(prob.system), VelocityEliminationFailed);
}

TEST(Legendre, LexBaseOrderAgrees) {
  auto prob = load_fixture("mixed_class.lag");
  const auto& t = prob.system.table;
  auto drl = canonical_hamiltonian(prob.system);
  auto lex = canonical_hamiltonian(prob.system, MonomialOrder::elimination(*t, BaseOrder::lex));
  EXPECT_EQ(drl.canonical, lex.canonical);
  for (const auto& g : lex.primary) EXPECT_TRUE(drl.primary_basis.contains(g));
  for (const auto& g : drl.primary) EXPECT_TRUE(lex.primary_basis.contains(g));
}

TEST(LagrangianSystem, RejectsMomenta) {
  auto t = VariableTable::phase_space({"q"});
  EXPECT_THROW(LagrangianSystem(t, P(t, "p_q*dq")), std::invalid_argument);
}

TEST(PoissonBracket, CanonicalRelations) {
  auto t = VariableTable::phase_space({"q1", "q2"});
  EXPECT_EQ(poisson_bracket(P(t, "p_q1"), P(t, "q1")), Polynomial::constant(t, 1));
  EXPECT_EQ(poisson_bracket(P(t, "q1"), P(t, "p_q1")), Polynomial::constant(t, -1));
  EXPECT_TRUE(poisson_bracket(P(t, "p_q1"), P(t, "q2")).is_zero());
  EXPECT_TRUE(poisson_bracket(P(t, "q1"), P(t, "q2")).is_zero());
  EXPECT_TRUE(poisson_bracket(P(t, "p_q1"), P(t, "p_q2")).is_zero());
  // Velocities are constants for the bracket.
  EXPECT_TRUE(poisson_bracket(P(t, "dq1"), P(t, "q1")).is_zero());
}

TEST(PoissonBracket, MultipliersAreConstants) {
  auto t = with_multipliers(VariableTable::phase_space({"q1", "q2"}), 2);
  auto f = P(t, "q1^2*p_q2"), g = P(t, "p_q1*q2");
  EXPECT_EQ(poisson_bracket(P(t, "u_1") * f, g), P(t, "u_1") * poisson_bracket(f, g));
  EXPECT_TRUE(poisson_bracket(P(t, "u_1"), P(t, "u_2*p_q1")).is_zero());
}

TEST(PoissonBracket, AlgebraAxiomsOnRandomTriples) {
  auto t = VariableTable::phase_space({"a", "b", "c"});
  auto vars = phase_space_variables(*t);  // six variables
  ASSERT_EQ(vars.size(), 6u);
  std::mt19937 rng(2718);
  for (int trial = 0; trial < 120; ++trial) {
    auto f = random_polynomial(rng, t, vars, 3, 4);
    auto g = random_polynomial(rng, t, vars, 3, 4);
    auto h = random_polynomial(rng, t, vars, 3, 4);
    Rational c = diracgb::testing::random_rational(rng);
    EXPECT_EQ(poisson_bracket(f, g), -poisson_bracket(g, f));
    EXPECT_EQ(poisson_bracket(f, g * h), poisson_bracket(f, g) * h + g * poisson_bracket(f, h));
    EXPECT_EQ(poisson_bracket(f, c * g + h), c * poisson_bracket(f, g) + poisson_bracket(f, h));
    auto jacobi = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                  poisson_bracket(h, poisson_bracket(f, g));
    EXPECT_TRUE(jacobi.is_zero());
  }
}

TEST(TotalHamiltonian, AddsOneMultiplierPerPrimary) {
  auto prob = load_fixture("mixed_class.lag");
  auto h = canonical_hamiltonian(prob.system);
  auto tot = total_hamiltonian(h);
  const auto& t = tot.polynomial.table();
  ASSERT_EQ(tot.multipliers.size(), 3u);
  Polynomial expected = h.canonical.rebind(t);
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_EQ((*t)[tot.multipliers[a]].name, VariableTable::multiplier_name(a));
    expected = expected + Polynomial::variable(t, tot.multipliers[a]) * h.primary[a].rebind(t);
  }
  EXPECT_EQ(tot.polynomial, expected);
}

TEST(EquationsOfMotion, HarmonicOscillator) {
  auto t = VariableTable::phase_space({"q"});
  auto H = P(t, "1/2*p_q^2 + 1/2*q^2");
  auto eom = equations_of_motion(H);
  ASSERT_EQ(eom.size(), 2u);
  EXPECT_EQ((*t)[eom[0].variable].name, "q");
  EXPECT_EQ(eom[0].rate, P(t, "p_q"));
  EXPECT_EQ((*t)[eom[1].variable].name, "p_q");
  EXPECT_EQ(eom[1].rate, P(t, "-q"));
}
