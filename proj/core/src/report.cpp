#include "qgames/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <sstream>

#include "json.hpp"
#include "qgames/errors.hpp"

namespace qgames {

namespace {

using nlohmann::json;

std::string fmt(double v, int significant) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

std::string fmt17(double v) { return fmt(v, 17); }
std::string fmt12(double v) { return fmt(v, 12); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

json payoffs_to_json(const PayoffMatrix& pm) {
  json out = json::object();
  out["rows"] = pm.row_names();
  out["cols"] = pm.col_names();
  json cells = json::array();
  for (std::size_t j = 0; j < pm.rows(); ++j) {
    json row = json::array();
    for (std::size_t k = 0; k < pm.cols(); ++k)
      row.push_back(json::array({pm.at(j, k).a, pm.at(j, k).b}));
    cells.push_back(std::move(row));
  }
  out["cells"] = std::move(cells);
  return out;
}

json ordering_to_json(const PreferenceOrdering& ordering) {
  json out = json::object();
  out["groups"] = ordering.groups;
  out["text"] = ordering.to_string();
  return out;
}

json form_to_json(const GameForm& form) {
  json out = json::object();
  out["label"] = to_string(form.label);
  out["relabeled"] = form.relabeled;
  out["alice"] = ordering_to_json(form.alice);
  out["bob"] = ordering_to_json(form.bob);
  return out;
}

json regions_to_json(const RegionReport& report) {
  json out = json::object();
  out["breakpoints"] = report.breakpoints;
  json regions = json::array();
  for (const auto& region : report.regions) {
    json r = json::object();
    r["lo"] = region.lo;
    r["hi"] = region.hi;
    r["form"] = form_to_json(region.form);
    regions.push_back(std::move(r));
  }
  out["regions"] = std::move(regions);
  return out;
}

json channel_to_json(const ChannelReport& report) {
  const ChannelMatrix& ch = report.channel;
  json out = json::object();
  out["alice_inputs"] = ch.alice_inputs();
  out["bob_inputs"] = ch.bob_inputs();
  out["outputs"] = ch.outputs();
  json probs = json::array();
  for (std::size_t j = 0; j < ch.alice_count(); ++j) {
    for (std::size_t k = 0; k < ch.bob_count(); ++k) {
      json row = json::array();
      for (std::size_t i = 0; i < ch.output_count(); ++i) row.push_back(ch.prob(j, k, i));
      probs.push_back(std::move(row));
    }
  }
  out["probs"] = std::move(probs);
  if (report.factorization) {
    json fact = json::object();
    json rows = json::array();
    for (const auto& row : report.factorization->rows) {
      json r = json::object();
      r["alice"] = row.alice;
      r["bob"] = row.bob;
      r["deviation"] = row.deviation;
      r["factorizes"] = row.factorizes;
      rows.push_back(std::move(r));
    }
    fact["rows"] = std::move(rows);
    fact["max_deviation"] = report.factorization->max_deviation;
    fact["correlated"] = report.factorization->correlated;
    out["factorization"] = std::move(fact);
  }
  out["reproduction_max_diff"] = report.reproduction_max_diff;
  return out;
}

json sweep_to_json(const MixedSweepReport& report) {
  json out = json::object();
  out["rule"] = report.rule;
  json points = json::array();
  for (const auto& pt : report.points) {
    json p = json::object();
    p["epsilon"] = pt.epsilon;
    p["payoff_a"] = pt.payoff_a;
    p["payoff_b"] = pt.payoff_b;
    points.push_back(std::move(p));
  }
  out["points"] = std::move(points);
  return out;
}

json curve_points_to_json(const std::vector<CurvePoint>& points) {
  json out = json::array();
  for (const auto& pt : points) {
    json p = json::object();
    p["p"] = pt.p;
    p["values"] = pt.values;
    out.push_back(std::move(p));
  }
  return out;
}

json curves_to_json(const CurveReport& report) {
  json out = json::object();
  out["cells"] = report.cell_names;
  out["alice"] = curve_points_to_json(report.alice);
  out["bob"] = curve_points_to_json(report.bob);
  return out;
}

[[noreturn]] void bad(const std::string& what) { throw ValidationError("report: " + what); }

const json& field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<std::string> strings_from_json(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) bad(std::string(what) + " entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

PayoffMatrix payoffs_from_json(const json& j) {
  const auto rows = strings_from_json(field(j, "rows"), "payoffs.rows");
  const auto cols = strings_from_json(field(j, "cols"), "payoffs.cols");
  const json& cells_j = field(j, "cells");
  if (!cells_j.is_array() || cells_j.size() != rows.size()) bad("payoffs.cells shape");
  std::vector<PayoffCell> cells;
  for (const auto& row : cells_j) {
    if (!row.is_array() || row.size() != cols.size()) bad("payoffs.cells shape");
    for (const auto& cell : row) {
      if (!cell.is_array() || cell.size() != 2) bad("payoffs cell must be [a, b]");
      cells.push_back({cell[0].get<double>(), cell[1].get<double>()});
    }
  }
  return PayoffMatrix(rows, cols, std::move(cells));
}

PreferenceOrdering ordering_from_json(const json& j, Player player) {
  PreferenceOrdering out;
  out.player = player;
  const json& groups = field(j, "groups");
  if (!groups.is_array()) bad("ordering groups must be an array");
  for (const auto& g : groups) {
    if (!g.is_array()) bad("ordering group must be an array");
    std::vector<int> group;
    for (const auto& v : g) group.push_back(v.get<int>());
    out.groups.push_back(std::move(group));
  }
  return out;
}

GameFormLabel label_from_string(const std::string& s) {
  if (s == "prisoners_dilemma") return GameFormLabel::kPrisonersDilemma;
  if (s == "chicken") return GameFormLabel::kChicken;
  if (s == "other") return GameFormLabel::kOther;
  if (s == "degenerate") return GameFormLabel::kDegenerate;
  bad("unknown game form label '" + s + "'");
}

GameForm form_from_json(const json& j) {
  GameForm form;
  form.label = label_from_string(field(j, "label").get<std::string>());
  form.relabeled = field(j, "relabeled").get<bool>();
  form.alice = ordering_from_json(field(j, "alice"), Player::kA);
  form.bob = ordering_from_json(field(j, "bob"), Player::kB);
  return form;
}

RegionReport regions_from_json(const json& j) {
  RegionReport out;
  for (const auto& v : field(j, "breakpoints")) out.breakpoints.push_back(v.get<double>());
  for (const auto& r : field(j, "regions")) {
    Region region;
    region.lo = field(r, "lo").get<double>();
    region.hi = field(r, "hi").get<double>();
    region.form = form_from_json(field(r, "form"));
    out.regions.push_back(std::move(region));
  }
  return out;
}

ChannelReport channel_from_json(const json& j) {
  const auto alice = strings_from_json(field(j, "alice_inputs"), "channel.alice_inputs");
  const auto bob = strings_from_json(field(j, "bob_inputs"), "channel.bob_inputs");
  const auto outputs = strings_from_json(field(j, "outputs"), "channel.outputs");
  const json& probs_j = field(j, "probs");
  if (!probs_j.is_array() || probs_j.size() != alice.size() * bob.size())
    bad("channel.probs shape");
  std::vector<double> probs;
  for (const auto& row : probs_j) {
    if (!row.is_array() || row.size() != outputs.size()) bad("channel.probs shape");
    for (const auto& v : row) probs.push_back(v.get<double>());
  }
  ChannelReport out{ChannelMatrix(alice, bob, outputs, std::move(probs)), std::nullopt, 0.0};
  if (j.contains("factorization")) {
    const json& fact = j["factorization"];
    FactorizationReport report;
    for (const auto& r : field(fact, "rows")) {
      RowFactorization row;
      row.alice = field(r, "alice").get<std::size_t>();
      row.bob = field(r, "bob").get<std::size_t>();
      row.deviation = field(r, "deviation").get<double>();
      row.factorizes = field(r, "factorizes").get<bool>();
      report.rows.push_back(row);
    }
    report.max_deviation = field(fact, "max_deviation").get<double>();
    report.correlated = field(fact, "correlated").get<bool>();
    out.factorization = std::move(report);
  }
  out.reproduction_max_diff = field(j, "reproduction_max_diff").get<double>();
  return out;
}

MixedSweepReport sweep_from_json(const json& j) {
  MixedSweepReport out;
  out.rule = field(j, "rule").get<std::string>();
  for (const auto& p : field(j, "points")) {
    SweepPoint pt;
    pt.epsilon = field(p, "epsilon").get<double>();
    pt.payoff_a = field(p, "payoff_a").get<double>();
    pt.payoff_b = field(p, "payoff_b").get<double>();
    out.points.push_back(pt);
  }
  return out;
}

std::vector<CurvePoint> curve_points_from_json(const json& j) {
  std::vector<CurvePoint> out;
  for (const auto& p : j) {
    CurvePoint pt;
    pt.p = field(p, "p").get<double>();
    for (const auto& v : field(p, "values")) pt.values.push_back(v.get<double>());
    out.push_back(std::move(pt));
  }
  return out;
}

CurveReport curves_from_json(const json& j) {
  CurveReport out;
  out.cell_names = strings_from_json(field(j, "cells"), "curves.cells");
  out.alice = curve_points_from_json(field(j, "alice"));
  out.bob = curve_points_from_json(field(j, "bob"));
  return out;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  json doc = json::object();
  doc["scenario"] = report.scenario_name;
  doc["subcommand"] = report.subcommand;
  if (report.payoffs) doc["payoffs"] = payoffs_to_json(*report.payoffs);
  if (report.form) doc["form"] = form_to_json(*report.form);
  if (report.nash) {
    json nash = json::array();
    for (const auto& cell : *report.nash) nash.push_back(json::array({cell.alice, cell.bob}));
    doc["nash"] = std::move(nash);
  }
  if (report.regions) doc["regions"] = regions_to_json(*report.regions);
  if (report.channel) doc["channel"] = channel_to_json(*report.channel);
  if (report.dephase) {
    json d = json::object();
    d["at_zero"] = payoffs_to_json(report.dephase->at_zero);
    d["at_one"] = payoffs_to_json(report.dephase->at_one);
    d["max_diff"] = report.dephase->max_diff;
    doc["dephase"] = std::move(d);
  }
  if (report.sweep) doc["sweep"] = sweep_to_json(*report.sweep);
  if (report.curves) doc["curves"] = curves_to_json(*report.curves);
  return doc.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("report: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) bad("document must be a JSON object");
  RunReport report;
  report.scenario_name = field(doc, "scenario").get<std::string>();
  report.subcommand = field(doc, "subcommand").get<std::string>();
  if (doc.contains("payoffs")) report.payoffs = payoffs_from_json(doc["payoffs"]);
  if (doc.contains("form")) report.form = form_from_json(doc["form"]);
  if (doc.contains("nash")) {
    std::vector<NashCell> nash;
    for (const auto& cell : doc["nash"]) {
      if (!cell.is_array() || cell.size() != 2) bad("nash cell must be [alice, bob]");
      nash.push_back({cell[0].get<std::string>(), cell[1].get<std::string>()});
    }
    report.nash = std::move(nash);
  }
  if (doc.contains("regions")) report.regions = regions_from_json(doc["regions"]);
  if (doc.contains("channel")) report.channel = channel_from_json(doc["channel"]);
  if (doc.contains("dephase")) {
    const json& d = doc["dephase"];
    report.dephase = DephaseReport{payoffs_from_json(field(d, "at_zero")),
                                   payoffs_from_json(field(d, "at_one")),
                                   field(d, "max_diff").get<double>()};
  }
  if (doc.contains("sweep")) report.sweep = sweep_from_json(doc["sweep"]);
  if (doc.contains("curves")) report.curves = curves_from_json(doc["curves"]);
  return report;
}

namespace {

std::string payoff_csv(const PayoffMatrix& pm) {
  std::string out = "alice,bob,payoff_a,payoff_b\n";
  for (std::size_t j = 0; j < pm.rows(); ++j) {
    for (std::size_t k = 0; k < pm.cols(); ++k) {
      out += csv_field(pm.row_names()[j]) + "," + csv_field(pm.col_names()[k]) + "," +
             fmt17(pm.at(j, k).a) + "," + fmt17(pm.at(j, k).b) + "\n";
    }
  }
  return out;
}

std::string classify_csv(const GameForm& form) {
  std::string out = "label,relabeled,alice_ordering,bob_ordering\n";
  out += to_string(form.label);
  out += form.relabeled ? ",true," : ",false,";
  out += csv_field(form.alice.to_string()) + "," + csv_field(form.bob.to_string()) + "\n";
  return out;
}

std::string nash_csv(const std::vector<NashCell>& nash) {
  std::string out = "alice,bob\n";
  for (const auto& cell : nash) out += csv_field(cell.alice) + "," + csv_field(cell.bob) + "\n";
  return out;
}

std::string regions_csv(const RegionReport& report) {
  std::string out = "lo,hi,label,relabeled,alice_ordering,bob_ordering\n";
  for (const auto& region : report.regions) {
    out += fmt17(region.lo) + "," + fmt17(region.hi) + "," + to_string(region.form.label);
    out += region.form.relabeled ? ",true," : ",false,";
    out += csv_field(region.form.alice.to_string()) + "," +
           csv_field(region.form.bob.to_string()) + "\n";
  }
  return out;
}

std::string channel_csv(const ChannelReport& report) {
  const ChannelMatrix& ch = report.channel;
  std::string out = "alice,bob";
  for (const auto& label : ch.outputs()) out += ",p_" + csv_field(label);
  if (report.factorization) out += ",factorizes,deviation";
  out += "\n";
  std::size_t row = 0;
  for (std::size_t j = 0; j < ch.alice_count(); ++j) {
    for (std::size_t k = 0; k < ch.bob_count(); ++k, ++row) {
      out += csv_field(ch.alice_inputs()[j]) + "," + csv_field(ch.bob_inputs()[k]);
      for (std::size_t i = 0; i < ch.output_count(); ++i) out += "," + fmt17(ch.prob(j, k, i));
      if (report.factorization) {
        const auto& fact = report.factorization->rows[row];
        out += fact.factorizes ? ",true," : ",false,";
        out += fmt17(fact.deviation);
      }
      out += "\n";
    }
  }
  return out;
}

std::string dephase_csv(const DephaseReport& report) {
  std::string out = "alice,bob,a_lambda0,b_lambda0,a_lambda1,b_lambda1\n";
  const PayoffMatrix& z = report.at_zero;
  for (std::size_t j = 0; j < z.rows(); ++j) {
    for (std::size_t k = 0; k < z.cols(); ++k) {
      out += csv_field(z.row_names()[j]) + "," + csv_field(z.col_names()[k]) + "," +
             fmt17(z.at(j, k).a) + "," + fmt17(z.at(j, k).b) + "," +
             fmt17(report.at_one.at(j, k).a) + "," + fmt17(report.at_one.at(j, k).b) + "\n";
    }
  }
  return out;
}

std::string sweep_csv(const MixedSweepReport& report) {
  std::string out = "epsilon,payoff_a,payoff_b\n";
  for (const auto& pt : report.points)
    out += fmt17(pt.epsilon) + "," + fmt17(pt.payoff_a) + "," + fmt17(pt.payoff_b) + "\n";
  return out;
}

std::string curves_csv(const CurveReport& report) {
  std::string out = "p";
  for (const auto& cell : report.cell_names) out += ",A:" + csv_field(cell);
  for (const auto& cell : report.cell_names) out += ",B:" + csv_field(cell);
  out += "\n";
  for (std::size_t i = 0; i < report.alice.size(); ++i) {
    out += fmt17(report.alice[i].p);
    for (double v : report.alice[i].values) out += "," + fmt17(v);
    for (double v : report.bob[i].values) out += "," + fmt17(v);
    out += "\n";
  }
  return out;
}

std::string payoff_table(const PayoffMatrix& pm, const std::string& indent) {
  std::vector<std::vector<std::string>> cells(pm.rows(), std::vector<std::string>(pm.cols()));
  for (std::size_t j = 0; j < pm.rows(); ++j)
    for (std::size_t k = 0; k < pm.cols(); ++k)
      cells[j][k] = "(" + fmt12(pm.at(j, k).a) + ", " + fmt12(pm.at(j, k).b) + ")";
  std::vector<std::size_t> widths(pm.cols());
  for (std::size_t k = 0; k < pm.cols(); ++k) {
    widths[k] = pm.col_names()[k].size();
    for (std::size_t j = 0; j < pm.rows(); ++j) widths[k] = std::max(widths[k], cells[j][k].size());
  }
  std::size_t name_width = 0;
  for (const auto& name : pm.row_names()) name_width = std::max(name_width, name.size());

  const auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
  };
  std::string out = indent + pad("", name_width);
  for (std::size_t k = 0; k < pm.cols(); ++k) out += "  " + pad(pm.col_names()[k], widths[k]);
  out += "\n";
  for (std::size_t j = 0; j < pm.rows(); ++j) {
    out += indent + pad(pm.row_names()[j], name_width);
    for (std::size_t k = 0; k < pm.cols(); ++k) out += "  " + pad(cells[j][k], widths[k]);
    out += "\n";
  }
  return out;
}

}  // namespace

std::string report_to_csv(const RunReport& report) {
  const std::string& sub = report.subcommand;
  if (sub == "payoff" && report.payoffs) return payoff_csv(*report.payoffs);
  if (sub == "classify" && report.form) return classify_csv(*report.form);
  if (sub == "nash" && report.nash) return nash_csv(*report.nash);
  if (sub == "regions" && report.regions) return regions_csv(*report.regions);
  if (sub == "curves" && report.curves) return curves_csv(*report.curves);
  if (sub == "channel" && report.channel) return channel_csv(*report.channel);
  if (sub == "mixed-sweep" && report.sweep) return sweep_csv(*report.sweep);
  if (sub == "dephase-check" && report.dephase) return dephase_csv(*report.dephase);
  // Fall back on whatever tabular payload is present.
  if (report.curves) return curves_csv(*report.curves);
  if (report.sweep) return sweep_csv(*report.sweep);
  if (report.channel) return channel_csv(*report.channel);
  if (report.dephase) return dephase_csv(*report.dephase);
  if (report.regions) return regions_csv(*report.regions);
  if (report.payoffs) return payoff_csv(*report.payoffs);
  if (report.form) return classify_csv(*report.form);
  if (report.nash) return nash_csv(*report.nash);
  throw ValidationError("report: nothing to render as CSV");
}

std::string report_to_table(const RunReport& report) {
  std::ostringstream out;
  out << "scenario: " << report.scenario_name << "\n";
  if (report.payoffs) {
    out << "payoffs:\n" << payoff_table(*report.payoffs, "  ");
  }
  if (report.form) {
    out << "form: " << report.form->signature() << "\n";
    out << "  alice: " << report.form->alice.to_string() << "\n";
    out << "  bob:   " << report.form->bob.to_string() << "\n";
  }
  if (report.nash) {
    out << "nash:";
    if (report.nash->empty()) out << " none";
    for (const auto& cell : *report.nash) out << " (" << cell.alice << ", " << cell.bob << ")";
    out << "\n";
  }
  if (report.regions) {
    out << "breakpoints:";
    for (double b : report.regions->breakpoints) out << " " << fmt12(b);
    out << "\nregions:\n";
    for (const auto& region : report.regions->regions) {
      out << "  (" << fmt12(region.lo) << ", " << fmt12(region.hi) << ")  "
          << region.form.signature() << "  alice " << region.form.alice.to_string() << "  bob "
          << region.form.bob.to_string() << "\n";
    }
  }
  if (report.channel) {
    const ChannelMatrix& ch = report.channel->channel;
    out << "channel rows (alice, bob -> outputs";
    for (const auto& label : ch.outputs()) out << " " << label;
    out << "):\n";
    std::size_t row = 0;
    for (std::size_t j = 0; j < ch.alice_count(); ++j) {
      for (std::size_t k = 0; k < ch.bob_count(); ++k, ++row) {
        out << "  " << ch.alice_inputs()[j] << ", " << ch.bob_inputs()[k] << " ->";
        for (std::size_t i = 0; i < ch.output_count(); ++i) out << " " << fmt12(ch.prob(j, k, i));
        if (report.channel->factorization) {
          const auto& fact = report.channel->factorization->rows[row];
          out << (fact.factorizes ? "  [product" : "  [correlated") << ", deviation "
              << fmt12(fact.deviation) << "]";
        }
        out << "\n";
      }
    }
    if (report.channel->factorization) {
      out << "channel: "
          << (report.channel->factorization->correlated ? "correlated" : "factorizable")
          << " (max deviation " << fmt12(report.channel->factorization->max_deviation) << ")\n";
    }
    out << "payoff reproduction max diff: " << fmt12(report.channel->reproduction_max_diff)
        << "\n";
  }
  if (report.dephase) {
    out << "payoffs at lambda = 0:\n" << payoff_table(report.dephase->at_zero, "  ");
    out << "payoffs at lambda = 1:\n" << payoff_table(report.dephase->at_one, "  ");
    out << "max payoff difference: " << fmt12(report.dephase->max_diff) << "\n";
  }
  if (report.sweep) {
    out << "mixed sweep (rule " << report.sweep->rule << "):\n";
    out << "  epsilon  payoff_a  payoff_b\n";
    for (const auto& pt : report.sweep->points)
      out << "  " << fmt12(pt.epsilon) << "  " << fmt12(pt.payoff_a) << "  "
          << fmt12(pt.payoff_b) << "\n";
  }
  if (report.curves) {
    out << "payoff curves (cells";
    for (const auto& cell : report.curves->cell_names) out << " " << cell;
    out << "):\n";
    for (std::size_t i = 0; i < report.curves->alice.size(); ++i) {
      out << "  p=" << fmt12(report.curves->alice[i].p) << "  A:";
      for (double v : report.curves->alice[i].values) out << " " << fmt12(v);
      out << "  B:";
      for (double v : report.curves->bob[i].values) out << " " << fmt12(v);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace qgames
