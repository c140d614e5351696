#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qgames/analysis.hpp"
#include "qgames/channel.hpp"
#include "qgames/engine.hpp"
#include "qgames/errors.hpp"
#include "qgames/report.hpp"
#include "qgames/scenario.hpp"

namespace {

using namespace qgames;

// The channel route must agree with the direct payoff computation; anything
// beyond accumulated rounding on random unitaries is a logic error.
constexpr double kReproductionTol = 1e-10;

struct Options {
  std::string scenario_path;
  std::string out_dir;
  std::string format = "table";
  std::string rule = "paper";
  std::size_t grid = 101;
  bool strict = false;
};

void add_common_options(CLI::App* cmd, Options& opts, bool with_grid, bool with_rule) {
  cmd->add_option("scenario", opts.scenario_path, "Scenario JSON file")->required();
  cmd->add_option("--out", opts.out_dir, "Directory to write the report into");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  if (with_grid) cmd->add_option("--grid", opts.grid, "Grid points over [0, 1]")->check(CLI::PositiveNumber);
  if (with_rule)
    cmd->add_option("--rule", opts.rule, "Mixed profile rule")
        ->check(CLI::IsMember({"paper", "derivative"}));
  cmd->add_flag("--strict", opts.strict, "Reject unknown scenario fields");
}

std::vector<NashCell> named_nash(const PayoffMatrix& pm) {
  std::vector<NashCell> out;
  for (const auto& [j, k] : pure_nash(pm)) out.push_back({pm.row_names()[j], pm.col_names()[k]});
  return out;
}

const ParametricFamily& require_family(const LoadedScenario& scenario) {
  if (!scenario.family)
    throw ValidationError("scenario '" + scenario.name +
                          "' declares no family; this subcommand sweeps one");
  return *scenario.family;
}

std::vector<std::string> cell_names(const PayoffMatrix& pm) {
  std::vector<std::string> out;
  for (const auto& row : pm.row_names())
    for (const auto& col : pm.col_names()) out.push_back(row + "/" + col);
  return out;
}

double payoff_max_diff(const PayoffMatrix& lhs, const PayoffMatrix& rhs) {
  double diff = 0.0;
  for (std::size_t j = 0; j < lhs.rows(); ++j) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      diff = std::max(diff, std::abs(lhs.at(j, k).a - rhs.at(j, k).a));
      diff = std::max(diff, std::abs(lhs.at(j, k).b - rhs.at(j, k).b));
    }
  }
  return diff;
}

RunReport run_payoff_like(const LoadedScenario& scenario, const std::string& sub) {
  RunReport report;
  report.scenario_name = scenario.name;
  report.subcommand = sub;
  report.payoffs = expected_payoffs(scenario.spec);
  report.form = classify(*report.payoffs);
  report.nash = named_nash(*report.payoffs);
  return report;
}

RunReport run_regions(const LoadedScenario& scenario) {
  RunReport report;
  report.scenario_name = scenario.name;
  report.subcommand = "regions";
  report.regions = region_analysis(require_family(scenario));
  return report;
}

RunReport run_curves(const LoadedScenario& scenario, std::size_t grid) {
  const ParametricFamily& family = require_family(scenario);
  RunReport report;
  report.scenario_name = scenario.name;
  report.subcommand = "curves";
  CurveReport curves;
  curves.cell_names = cell_names(family.payoffs_at(0.0));
  curves.alice = emit_payoff_curves(family, Player::kA, grid);
  curves.bob = emit_payoff_curves(family, Player::kB, grid);
  report.curves = std::move(curves);
  return report;
}

RunReport run_channel(const LoadedScenario& scenario) {
  RunReport report;
  report.scenario_name = scenario.name;
  report.subcommand = "channel";
  ChannelMatrix channel = channel_from_game(scenario.spec);
  const PayoffMatrix direct = expected_payoffs(scenario.spec);
  const PayoffMatrix via_channel = expected_payoffs_channel(channel, scenario.spec.outcomes());
  const double diff = payoff_max_diff(direct, via_channel);
  FactorizationReport factorization = factorization_test(channel, scenario.spec.dim_a());
  report.channel = ChannelReport{std::move(channel), std::move(factorization), diff};
  if (diff > kReproductionTol)
    throw NumericalError("channel: payoff reproduction differs by " + std::to_string(diff));
  return report;
}

RunReport run_mixed_sweep(const LoadedScenario& scenario, const std::string& rule,
                          std::size_t grid) {
  const OutcomeMap& outcomes = scenario.spec.outcomes();
  if (outcomes.values_a.size() != 4)
    throw ValidationError("scenario '" + scenario.name +
                          "' is not a 1-bit-per-player game; mixed-sweep needs 4 outcomes");
  RunReport report;
  report.scenario_name = scenario.name;
  report.subcommand = "mixed-sweep";
  MixedSweepReport sweep;
  sweep.rule = rule;
  sweep.points = sweep_epsilon(
      rule == "paper" ? ProfileRule::kPrescribed : ProfileRule::kDerivative, grid, outcomes);
  report.sweep = std::move(sweep);
  return report;
}

RunReport run_dephase_check(const LoadedScenario& scenario) {
  RunReport report;
  report.scenario_name = scenario.name;
  report.subcommand = "dephase-check";
  const DensityMatrix rho = density_from_pure(scenario.spec.input());
  const auto payoffs_at = [&](double lambda) {
    return expected_payoffs_mixed_state(
        scenario.spec, dephase(rho, DephasingChannel(lambda), scenario.spec.basis()));
  };
  PayoffMatrix at_zero = payoffs_at(0.0);
  PayoffMatrix at_one = payoffs_at(1.0);
  const double diff = payoff_max_diff(at_zero, at_one);
  report.dephase = DephaseReport{std::move(at_zero), std::move(at_one), diff};
  return report;
}

std::string render(const RunReport& report, const std::string& format) {
  if (format == "csv") return report_to_csv(report);
  if (format == "json") return report_to_json(report);
  return report_to_table(report);
}

void write_output(const RunReport& report, const Options& opts, const std::string& rendered) {
  if (opts.out_dir.empty()) return;
  const std::string ext = opts.format == "csv" ? ".csv" : opts.format == "json" ? ".json" : ".txt";
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  const fs::path path = fs::path(opts.out_dir) / (report.scenario_name + "_" +
                                                  report.subcommand + ext);
  std::ofstream out(path, std::ios::binary);
  out << rendered;
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum 2-player game analyzer"};
  app.require_subcommand(1);

  Options opts;
  CLI::App* payoff = app.add_subcommand("payoff", "Expected payoff matrix");
  CLI::App* classify_cmd = app.add_subcommand("classify", "Game form and orderings");
  CLI::App* nash = app.add_subcommand("nash", "Pure Nash equilibria");
  CLI::App* regions = app.add_subcommand("regions", "Family region analysis");
  CLI::App* curves = app.add_subcommand("curves", "Family payoff curves");
  CLI::App* channel = app.add_subcommand("channel", "Induced classical channel");
  CLI::App* sweep = app.add_subcommand("mixed-sweep", "Mixed play over correlated noise");
  CLI::App* dephase_cmd = app.add_subcommand("dephase-check", "Payoffs under dephasing");
  for (CLI::App* cmd : {payoff, classify_cmd, nash, regions, channel, dephase_cmd})
    add_common_options(cmd, opts, /*with_grid=*/false, /*with_rule=*/false);
  add_common_options(curves, opts, /*with_grid=*/true, /*with_rule=*/false);
  add_common_options(sweep, opts, /*with_grid=*/true, /*with_rule=*/true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const LoadedScenario scenario =
        load_scenario_file(opts.scenario_path, ParseOptions{opts.strict});
    RunReport report = [&] {
      if (payoff->parsed()) return run_payoff_like(scenario, "payoff");
      if (classify_cmd->parsed()) return run_payoff_like(scenario, "classify");
      if (nash->parsed()) return run_payoff_like(scenario, "nash");
      if (regions->parsed()) return run_regions(scenario);
      if (curves->parsed()) return run_curves(scenario, opts.grid);
      if (channel->parsed()) return run_channel(scenario);
      if (sweep->parsed()) return run_mixed_sweep(scenario, opts.rule, opts.grid);
      return run_dephase_check(scenario);
    }();
    const std::string rendered = render(report, opts.format);
    std::cout << rendered;
    write_output(report, opts, rendered);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
