#ifndef DIRACGB_CLI_HPP
#define DIRACGB_CLI_HPP

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parser.hpp"
#include "report.hpp"

namespace diracgb {

// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_inconsistent = 2;
inline constexpr int exit_incomplete = 3;

namespace detail {

inline std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::map<std::string, Rational> parse_param_flags(const std::vector<std::string>& flags) {
  std::map<std::string, Rational> out;
  for (const auto& f : flags) {
    auto eq = f.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--param expects NAME=RAT, got '" + f + "'");
    out[f.substr(0, eq)] = parse_rational(f.substr(eq + 1));
  }
  return out;
}

}  // namespace detail

/// Entry point of the `diracgb` tool. Returns the process exit code:
/// 0 consistent or regular, 2 inconsistent, 3 iteration limit or failed
/// velocity elimination, 1 usage or parse error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirac constraint analysis of polynomial Lagrangians via Groebner bases", "diracgb"};
  app.require_subcommand(1);

  std::string file;
  std::vector<std::string> params;
  std::string order;
  bool radical = false, json = false, eom = false, timings = false;
  std::size_t max_iter = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "Compute and classify the complete constraint set");
  analyze_cmd->add_option("file", file, "Problem file ('-' for stdin)")->required();
  analyze_cmd->add_flag("--radical-check,--check-radical", radical, "Test new constraints for radical membership");
  analyze_cmd->add_option("--order", order, "Base monomial order")->check(CLI::IsMember({"degrevlex", "lex"}));
  analyze_cmd->add_option("--param", params, "Parameter value NAME=RAT (repeatable)");
  analyze_cmd->add_flag("--json", json, "Emit the machine-readable report");
  analyze_cmd->add_flag("--eom", eom, "Include the Hamiltonian equations of motion");
  analyze_cmd->add_option("--max-iter", max_iter, "Cap on completion passes")->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--timings", timings, "Include timings in the report");

  auto* groebner_cmd = app.add_subcommand("groebner", "Print the primary-constraint Groebner basis");
  groebner_cmd->add_option("file", file, "Problem file ('-' for stdin)")->required();
  groebner_cmd->add_option("--order", order, "Base monomial order")->check(CLI::IsMember({"degrevlex", "lex"}));
  groebner_cmd->add_option("--param", params, "Parameter value NAME=RAT (repeatable)");

  std::string lhs, rhs;
  auto* bracket_cmd = app.add_subcommand("bracket", "Print the Poisson bracket of two phase-space polynomials");
  bracket_cmd->add_option("file", file, "Problem file ('-' for stdin)")->required();
  bracket_cmd->add_option("f", lhs, "First polynomial")->required();
  bracket_cmd->add_option("g", rhs, "Second polynomial")->required();
  bracket_cmd->add_option("--param", params, "Parameter value NAME=RAT (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    auto problem = parse_problem(detail::read_input(file), detail::parse_param_flags(params));
    const auto& opts_in_file = problem.file.options;
    AnalysisOptions opts;
    opts.order = order.empty() ? opts_in_file.order.value_or(BaseOrder::degrevlex) : parse_base_order(order);
    opts.radical_check = radical || opts_in_file.radical_check.value_or(false);
    opts.max_iterations = max_iter ? std::optional<std::size_t>(max_iter) : opts_in_file.max_iterations;
    opts.equations_of_motion = eom;

    if (analyze_cmd->parsed()) {
      auto report = analyze(problem.system, opts);
      out << render_report(report, json ? ReportFormat::machine : ReportFormat::text, RenderOptions{timings});
      if (report.status == Status::inconsistent) return exit_inconsistent;
      if (report.status == Status::iteration_limit) return exit_incomplete;
      return exit_ok;
    }

    if (groebner_cmd->parsed()) {
      const auto& sys = problem.system;
      auto ord = MonomialOrder::elimination(*sys.table, opts.order);
      auto h = canonical_hamiltonian(sys, ord);
      out << "# primary-constraint basis, " << h.primary_basis.size() << " element(s), order "
          << ord.describe(*sys.table) << "\n";
      for (const auto& g : h.primary_basis.elements()) out << to_string(g, ord) << "\n";
      return exit_ok;
    }

    const auto& table = problem.system.table;
    std::map<std::string, std::optional<Rational>> values(problem.file.params.begin(), problem.file.params.end());
    auto f = parse_polynomial(lhs, table, values);
    auto g = parse_polynomial(rhs, table, values);
    out << to_string(poisson_bracket(f, g)) << "\n";
    return exit_ok;
  } catch (const ParseError& e) {
    err << "error: " << file << ":" << e.what() << "\n";
    return exit_usage;
  } catch (const VelocityEliminationFailed& e) {
    err << "error: " << e.what() << "\n";
    return exit_incomplete;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace diracgb

#endif  // DIRACGB_CLI_HPP
