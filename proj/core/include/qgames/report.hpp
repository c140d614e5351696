#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgames/analysis.hpp"
#include "qgames/channel.hpp"

namespace qgames {

struct NashCell {
  std::string alice;
  std::string bob;
};

struct ChannelReport {
  ChannelMatrix channel;
  std::optional<FactorizationReport> factorization;
  double reproduction_max_diff = 0.0;
};

struct DephaseReport {
  PayoffMatrix at_zero;
  PayoffMatrix at_one;
  double max_diff = 0.0;
};

struct MixedSweepReport {
  std::string rule;  // "paper" or "derivative"
  std::vector<SweepPoint> points;
};

struct CurveReport {
  std::vector<std::string> cell_names;  // row-major "row/col" labels
  std::vector<CurvePoint> alice;
  std::vector<CurvePoint> bob;
};

/// Everything a CLI run produced. Only the sections the subcommand filled
/// are present; all of them serialize to JSON and parse back to equal
/// values.
struct RunReport {
  std::string scenario_name;
  std::string subcommand;
  std::optional<PayoffMatrix> payoffs;
  std::optional<GameForm> form;
  std::optional<std::vector<NashCell>> nash;
  std::optional<RegionReport> regions;
  std::optional<ChannelReport> channel;
  std::optional<DephaseReport> dephase;
  std::optional<MixedSweepReport> sweep;
  std::optional<CurveReport> curves;
};

/// Pretty-printed JSON document, keys sorted, doubles emitted losslessly.
std::string report_to_json(const RunReport& report);

RunReport report_from_json(const std::string& text);

/// CSV for the subcommand's tabular payload: header row, 17 significant
/// digits, LF line endings.
std::string report_to_csv(const RunReport& report);

/// Human-readable rendering of every section present.
std::string report_to_table(const RunReport& report);

}  // namespace qgames
