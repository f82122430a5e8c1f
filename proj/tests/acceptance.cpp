// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <diracgb/cli.hpp>

#include "testing.hpp"

using namespace diracgb;
using namespace diracgb::testing;

namespace {

using clock_type = std::chrono::steady_clock;

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::vector<Polynomial> polys(const TablePtr& t, std::initializer_list<const char*> texts) {
  std::vector<Polynomial> out;
  for (auto s : texts) out.push_back(P(t, s));
  return out;
}

bool same_basis(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b, const GroebnerBasis& ref) {
  return buchberger(a, ref.order(), ref.table()) == buchberger(b, ref.order(), ref.table());
}

GroebnerBasis report_basis(const AnalysisReport& r) { return buchberger(r.basis, r.order, r.table); }

void criterion1(Check& c) {
  auto t0 = clock_type::now();
  auto r = analyze(load_fixture("su2_ym_0p1.lag").system);
  double secs = seconds_since(t0);
  c.expect(r.status == Status::consistent, "status consistent");
  const auto& t = r.table;
  std::vector<std::string> prim;
  for (const auto& k : r.primary) prim.push_back(to_string(k.poly, r.order));
  c.expect(prim == std::vector<std::string>{"p_y1", "p_y2", "p_y3"}, "primaries {p_y1, p_y2, p_y3}");
  c.expect(r.complete.size() == 6, "six constraints");
  auto G = report_basis(r);
  for (auto g : {"x2*p_x3 - x3*p_x2", "x3*p_x1 - x1*p_x3", "x1*p_x2 - x2*p_x1"})
    c.expect(G.contains(P(t, g)), std::string("ideal contains ") + g);
  c.expect(r.matrix && r.matrix->rank == 0, "rank 0");
  c.expect(r.first_class.size() == 6 && r.second_class.empty(), "all six first class");
  c.expect(secs < 1.0, "runtime under 1 s");
}

void criterion2(Check& c) {
  auto t0 = clock_type::now();
  auto r = analyze(load_fixture("rotator.lag").system);
  double secs = seconds_since(t0);
  c.expect(r.status == Status::consistent, "status consistent");
  auto G = report_basis(r);
  auto expected = polys(r.table, {"p_lam", "q1^2 + q2^2 + q3^2 - 1", "p_q1*q1 + p_q2*q2 + p_q3*q3",
                                  "2*lam + p_q1^2 + p_q2^2 + p_q3^2"});
  c.expect(same_basis(polynomials(r.complete), expected, G), "reduced basis equals the expected one");
  c.expect(r.matrix && r.matrix->rank == 4, "rank 4");
  c.expect(r.first_class.empty() && r.second_class.size() == 4, "four second class, no first class");
  c.expect(secs < 1.0, "runtime under 1 s");
}

void criterion3(Check& c) {
  auto t0 = clock_type::now();
  auto r = analyze(load_fixture("mixed_class.lag").system);
  double secs = seconds_since(t0);
  c.expect(r.status == Status::consistent, "status consistent");
  const auto& t = r.table;
  auto G = report_basis(r);
  auto expected_primary = buchberger(polys(t, {"p_q1 + q2", "p_q2 - q1", "p_q3"}), r.order, t);
  c.expect(r.primary.size() == 3 && buchberger(polynomials(r.primary), r.order, t) == expected_primary,
           "primaries {p1 + q2, p2 - q1, p3}");
  std::size_t secondary = 0;
  for (const auto& k : r.complete)
    if (k.origin == Origin::consistency) {
      ++secondary;
      c.expect(expected_primary.reduce(k.poly) == P(t, "q1"), "secondary has normal form q1");
    }
  c.expect(secondary == 1, "exactly one secondary constraint");
  c.expect(r.matrix && r.matrix->rank == 2, "rank 2");
  c.expect(r.first_class.size() == 2 && r.second_class.size() == 2, "two first and two second class");
  auto all = polynomials(r.complete);
  c.expect(first_class_certificate(polynomials(r.first_class), all, G), "first-class certificate");
  auto both = polynomials(r.first_class);
  for (const auto& k : r.second_class) both.push_back(k.poly);
  c.expect(same_basis(both, all, G), "classes span the constraint ideal");
  c.expect(first_class_certificate(polys(t, {"p_q2 + q1", "p_q3"}), all, G), "{p2 + q1, p3} is first class");
  c.expect(secs < 1.0, "runtime under 1 s");
}

void criterion4(Check& c) {
  auto t0 = clock_type::now();
  auto r = analyze(load_fixture("linear_potential.lag").system);
  double secs = seconds_since(t0);
  c.expect(r.canonical_hamiltonian == P(r.table, "1/2*p_q1^2 - q2"), "H_c = 1/2 p1^2 - q2");
  c.expect(r.primary.size() == 1 && to_string(r.primary[0].poly, r.order) == "p_q2", "single primary p2");
  c.expect(r.status == Status::inconsistent, "status inconsistent");
  std::string path = fixture_path("linear_potential.lag");
  const char* argv[] = {"diracgb", "analyze", path.c_str()};
  std::ostringstream out, err;
  c.expect(run_cli(3, argv, out, err) == 2, "exit code 2");
  c.expect(secs < 1.0, "runtime under 1 s");
}

void criterion5(Check& c) {
  for (auto seed : generated_seeds) {
    auto text = generated_lagrangian(seed);
    auto prob = parse_problem(text);
    const auto& L = prob.system.lagrangian;
    std::size_t used = 0;
    for (std::size_t v = 0; v < prob.system.table->size(); ++v) used += L.uses(v);
    c.expect(L.degree() == 4, "degree 4 (seed " + std::to_string(seed) + ")");
    c.expect(used == 12, "12 variables (seed " + std::to_string(seed) + ")");
    auto t0 = clock_type::now();
    auto r = analyze(prob.system);
    double secs = seconds_since(t0);
    c.expect(r.status == Status::consistent && !r.primary.empty(), "singular and consistent");
    c.expect(r.matrix && r.matrix->rank > 0 && !r.first_class.empty(), "both classes exercised");
    c.expect(secs < 30.0, "runtime under 30 s (seed " + std::to_string(seed) + ")");
  }
}

void criterion6(Check& c) {
  // Groebner certificate and normal form laws on seeded random ideals.
  auto t = VariableTable::phase_space({"a", "b", "c"});
  auto vars = phase_space_variables(*t);
  std::mt19937 rng(6);
  auto ord = MonomialOrder::elimination(*t);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Polynomial> F;
    for (int k = 0; k < 3; ++k) F.push_back(random_polynomial(rng, t, {vars[0], vars[3], vars[4]}, 2, 3));
    auto G = buchberger(F, ord, t);
    c.expect(s_polynomial_certificate(G), "S-polynomial certificate");
    for (int k = 0; k < 5; ++k) {
      auto f = random_polynomial(rng, t, vars, 3, 4), g = random_polynomial(rng, t, vars, 3, 4);
      Rational a = random_rational(rng), b = random_rational(rng);
      auto nf = G.reduce(f);
      c.expect(G.reduce(nf) == nf, "normal form idempotence");
      c.expect(G.reduce(a * f + b * g) == a * nf + b * G.reduce(g), "normal form linearity");
    }
  }

  // Bracket axioms on 120 random triples of degree <= 3 in 6 variables.
  for (int trial = 0; trial < 120; ++trial) {
    auto f = random_polynomial(rng, t, vars, 3, 4);
    auto g = random_polynomial(rng, t, vars, 3, 4);
    auto h = random_polynomial(rng, t, vars, 3, 4);
    c.expect(poisson_bracket(f, g) == -poisson_bracket(g, f), "antisymmetry");
    c.expect(poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h), "Leibniz");
    c.expect((poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
              poisson_bracket(h, poisson_bracket(f, g)))
                 .is_zero(),
             "Jacobi");
  }

  // Per-fixture laws.
  for (const auto& src : all_sources()) {
    auto h = canonical_hamiltonian(parse_problem(src.text).system);
    auto comp = complete_constraints(h);
    if (comp.status != Status::consistent) continue;
    const std::string tag = " (" + src.name + ")";
    c.expect(fixpoint_certificate(comp), "fixpoint certificate" + tag);
    c.expect(s_polynomial_certificate(comp.basis), "constraint basis certificate" + tag);
    auto s = separate(comp.constraints, comp.basis);
    c.expect(skew_symmetric(s.matrix.entries, comp.basis), "skew-symmetric bracket matrix" + tag);
    c.expect(s.matrix.rank % 2 == 0, "even rank" + tag);
    c.expect(s.first.size() + s.second.size() == comp.constraints.size(), "|first| + |second| = k" + tag);
    c.expect(s.second.size() == s.matrix.rank, "|second| = rank" + tag);
  }
}

void criterion7(Check& c) {
  for (const auto& src : all_sources()) {
    auto render = [&] {
      return render_report(analyze(parse_problem(src.text).system), ReportFormat::machine);
    };
    c.expect(render() == render(), "identical machine reports (" + src.name + ")");
  }
  for (const char* f : {"mixed_class.lag", "rotator.lag", "su2_ym_0p1.lag", "linear_potential.lag"}) {
    std::string path = fixture_path(f);
    const char* argv[] = {"diracgb", "analyze", path.c_str(), "--json"};
    std::ostringstream o1, o2, e1, e2;
    run_cli(4, argv, o1, e1);
    run_cli(4, argv, o2, e2);
    c.expect(o1.str() == o2.str() && !o1.str().empty(), std::string("identical CLI output (") + f + ")");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"1 SU(2) Yang-Mills 0+1: six first-class constraints", criterion1},
      {"2 rotator: four second-class constraints", criterion2},
      {"3 mixed first/second class model", criterion3},
      {"4 inconsistent linear potential, exit code 2", criterion4},
      {"5 generated quartic 12-variable fixture under 30 s", criterion5},
      {"6 property suites", criterion6},
      {"7 deterministic machine reports", criterion7},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    auto t0 = clock_type::now();
    try {
      run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %s (%.3f s)\n", c.failures.empty() ? "PASS" : "FAIL", name.c_str(), seconds_since(t0));
    for (const auto& f : c.failures) std::printf("    failed: %s\n", f.c_str());
    failed += !c.failures.empty();
  }
  return failed == 0 ? 0 : 1;
}
