#include "qgames/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qgames/errors.hpp"
#include "qgames/tolerances.hpp"

namespace qgames {

namespace {

using nlohmann::json;

// Document-level norm check is looser than the engine tolerance: scenario
// authors type truncated decimals, and anything closer than this is rescaled
// exactly rather than rejected.
constexpr double kStateEntryTol = 1e-9;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& path, bool strict) {
  if (!strict) return;
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) fail(path, "unknown field '" + key + "'");
  }
}

long long parse_integer(const std::string& text, const std::string& path) {
  long long value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) fail(path, "malformed integer '" + text + "'");
  return value;
}

double rational_from_string(const std::string& text, const std::string& path) {
  if (text.empty()) fail(path, "empty numeric string");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    if (text.find('/', slash + 1) != std::string::npos)
      fail(path, "malformed rational '" + text + "'");
    const long long num = parse_integer(text.substr(0, slash), path);
    const long long den = parse_integer(text.substr(slash + 1), path);
    if (den == 0) fail(path, "rational '" + text + "' divides by zero");
    return static_cast<double>(num) / static_cast<double>(den);
  }
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value))
    fail(path, "malformed number '" + text + "'");
  return value;
}

double scalar_value(const json& v, const std::string& path) {
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "non-finite number");
    return d;
  }
  if (v.is_string()) return rational_from_string(v.get<std::string>(), path);
  fail(path, "expected a number or rational string");
}

Complex complex_value(const json& v, const std::string& path, bool strict) {
  if (v.is_number() || v.is_string()) return Complex{scalar_value(v, path), 0.0};
  if (v.is_object()) {
    check_keys(v, {"re", "im"}, path, strict);
    double re = 0.0;
    double im = 0.0;
    if (v.contains("re")) re = scalar_value(v["re"], path + ".re");
    if (v.contains("im")) im = scalar_value(v["im"], path + ".im");
    if (!v.contains("re") && !v.contains("im")) fail(path, "complex entry has neither re nor im");
    return Complex{re, im};
  }
  fail(path, "expected a scalar or {re, im} object");
}

CMatrix matrix_value(const json& v, const std::string& path, bool strict) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  CMatrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = v[i];
    if (!row.is_array()) fail(path + "[" + std::to_string(i) + "]", "expected an array");
    if (i == 0) {
      cols = row.size();
      if (cols == 0) fail(path, "empty matrix row");
      m = CMatrix(rows, cols);
    } else if (row.size() != cols) {
      fail(path + "[" + std::to_string(i) + "]", "ragged matrix row");
    }
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = complex_value(row[j], path + "[" + std::to_string(i) + "][" +
                                          std::to_string(j) + "]",
                              strict);
  }
  return m;
}

UnitaryOperator unitary_value(const json& v, const std::string& path, bool strict) {
  try {
    return UnitaryOperator(matrix_value(v, path, strict));
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

OpScope scope_value(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a scope string");
  const std::string s = v.get<std::string>();
  if (s == "local_a") return OpScope::kLocalA;
  if (s == "local_b") return OpScope::kLocalB;
  if (s == "joint") return OpScope::kJoint;
  fail(path, "unknown scope '" + s + "' (expected local_a, local_b or joint)");
}

std::vector<NamedOperator> ops_value(const json& v, const std::string& path, bool strict) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty operator list");
  std::vector<NamedOperator> ops;
  ops.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string entry_path = path + "[" + std::to_string(i) + "]";
    const json& entry = v[i];
    if (!entry.is_object()) fail(entry_path, "expected an operator object");
    check_keys(entry, {"name", "scope", "matrix"}, entry_path, strict);
    const json& name = require(entry, "name", entry_path);
    if (!name.is_string() || name.get<std::string>().empty())
      fail(entry_path + ".name", "expected a non-empty string");
    const OpScope scope = scope_value(require(entry, "scope", entry_path), entry_path + ".scope");
    UnitaryOperator op = unitary_value(require(entry, "matrix", entry_path),
                                       entry_path + ".matrix", strict);
    ops.push_back({name.get<std::string>(), std::move(op), scope});
  }
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (ops[i].name == ops[j].name)
        fail(path, "duplicate operator name '" + ops[i].name + "'");
  return ops;
}

StateVector state_value(const json& v, const std::vector<std::string>& labels,
                        const std::string& path, bool strict) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty amplitude list");
  std::vector<Complex> amps(labels.size(), Complex{0.0, 0.0});
  std::vector<bool> seen(labels.size(), false);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string entry_path = path + "[" + std::to_string(i) + "]";
    const json& entry = v[i];
    if (!entry.is_object()) fail(entry_path, "expected an amplitude object");
    check_keys(entry, {"label", "re", "im", "amp2"}, entry_path, strict);
    const json& label = require(entry, "label", entry_path);
    if (!label.is_string()) fail(entry_path + ".label", "expected a string");
    const std::string label_s = label.get<std::string>();
    const auto it = std::find(labels.begin(), labels.end(), label_s);
    if (it == labels.end()) fail(entry_path + ".label", "unknown basis label '" + label_s + "'");
    const std::size_t index = static_cast<std::size_t>(it - labels.begin());
    if (seen[index]) fail(entry_path, "duplicate basis label '" + label_s + "'");
    seen[index] = true;
    if (entry.contains("amp2")) {
      if (entry.contains("re") || entry.contains("im"))
        fail(entry_path, "amp2 excludes re/im");
      // Signed squared magnitude: "3/5" means +sqrt(3/5), "-1/2" means
      // -sqrt(1/2).
      const double a2 = scalar_value(entry["amp2"], entry_path + ".amp2");
      amps[index] = Complex{std::copysign(std::sqrt(std::abs(a2)), a2), 0.0};
    } else {
      amps[index] = complex_value(entry, entry_path, /*strict=*/false);
    }
  }
  double norm_sq = 0.0;
  for (const auto& a : amps) norm_sq += std::norm(a);
  if (std::abs(norm_sq - 1.0) > kStateEntryTol) {
    std::ostringstream msg;
    msg << "squared norm " << norm_sq << " is not 1 within " << kStateEntryTol;
    fail(path, msg.str());
  }
  return StateVector::normalized(std::move(amps));
}

json scalar_to_json(double v) { return json(v); }

json complex_to_json(const Complex& c) {
  json out = json::object();
  out["re"] = scalar_to_json(c.real());
  out["im"] = scalar_to_json(c.imag());
  return out;
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json ops_to_json(const std::vector<NamedOperator>& ops) {
  json out = json::array();
  for (const auto& named : ops) {
    json entry = json::object();
    entry["name"] = named.name;
    entry["scope"] = named.scope == OpScope::kLocalA   ? "local_a"
                     : named.scope == OpScope::kLocalB ? "local_b"
                                                       : "joint";
    entry["matrix"] = matrix_to_json(named.op.matrix());
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

double parse_rational(const std::string& text) {
  return rational_from_string(text, "rational");
}

LoadedScenario parse_scenario(const std::string& text, const ParseOptions& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("scenario: document must be a JSON object");
  check_keys(doc,
             {"schema_version", "name", "subsystem_dims", "input_state", "alice_ops", "bob_ops",
              "entangler", "measurement", "outcomes", "family"},
             "scenario", opts.strict);

  const json& version = require(doc, "schema_version", "scenario");
  if (!version.is_number_integer() || version.get<int>() != 1)
    fail("schema_version", "unsupported value (this reader understands version 1)");

  const json& name = require(doc, "name", "scenario");
  if (!name.is_string() || name.get<std::string>().empty())
    fail("name", "expected a non-empty string");

  const json& dims = require(doc, "subsystem_dims", "scenario");
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() ||
      !dims[1].is_number_integer())
    fail("subsystem_dims", "expected [dim_a, dim_b] integers");
  const long long dim_a = dims[0].get<long long>();
  const long long dim_b = dims[1].get<long long>();
  if (dim_a < 2 || dim_b < 2 || dim_a * dim_b > static_cast<long long>(kMaxDim))
    fail("subsystem_dims", "each dimension must be >= 2 with joint dimension <= " +
                               std::to_string(kMaxDim));
  const auto da = static_cast<std::size_t>(dim_a);
  const auto db = static_cast<std::size_t>(dim_b);
  const auto computational_labels = default_basis_labels(da, db);

  StateVector input =
      state_value(require(doc, "input_state", "scenario"), computational_labels, "input_state",
                  opts.strict);

  auto alice = ops_value(require(doc, "alice_ops", "scenario"), "alice_ops", opts.strict);
  auto bob = ops_value(require(doc, "bob_ops", "scenario"), "bob_ops", opts.strict);
  for (const auto& op : alice)
    if (op.scope == OpScope::kLocalB) fail("alice_ops", "operator '" + op.name + "' scoped local_b");
  for (const auto& op : bob)
    if (op.scope == OpScope::kLocalA) fail("bob_ops", "operator '" + op.name + "' scoped local_a");

  std::optional<UnitaryOperator> entangler;
  if (doc.contains("entangler"))
    entangler = unitary_value(doc["entangler"], "entangler", opts.strict);

  std::vector<std::string> labels = computational_labels;
  std::optional<UnitaryOperator> basis_change;
  if (doc.contains("measurement")) {
    const json& meas = doc["measurement"];
    if (!meas.is_object()) fail("measurement", "expected an object");
    check_keys(meas, {"labels", "basis_change"}, "measurement", opts.strict);
    if (meas.contains("labels")) {
      const json& raw = meas["labels"];
      if (!raw.is_array() || raw.size() != da * db)
        fail("measurement.labels", "expected " + std::to_string(da * db) + " labels");
      labels.clear();
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!raw[i].is_string())
          fail("measurement.labels[" + std::to_string(i) + "]", "expected a string");
        labels.push_back(raw[i].get<std::string>());
      }
    }
    if (meas.contains("basis_change"))
      basis_change = unitary_value(meas["basis_change"], "measurement.basis_change", opts.strict);
  }
  MeasurementBasis basis = [&] {
    try {
      return MeasurementBasis(labels, std::move(basis_change));
    } catch (const ValidationError& e) {
      fail("measurement", e.what());
    }
  }();

  const json& outcome_doc = require(doc, "outcomes", "scenario");
  if (!outcome_doc.is_object()) fail("outcomes", "expected an object keyed by basis label");
  OutcomeMap outcomes;
  outcomes.values_a.resize(labels.size(), 0.0);
  outcomes.values_b.resize(labels.size(), 0.0);
  std::vector<bool> covered(labels.size(), false);
  for (const auto& [key, value] : outcome_doc.items()) {
    const std::string entry_path = "outcomes." + key;
    const auto it = std::find(labels.begin(), labels.end(), key);
    if (it == labels.end()) fail(entry_path, "unknown outcome label");
    const std::size_t index = static_cast<std::size_t>(it - labels.begin());
    if (covered[index]) fail(entry_path, "duplicate outcome label");
    covered[index] = true;
    if (!value.is_array() || value.size() != 2)
      fail(entry_path, "expected [alice_value, bob_value]");
    outcomes.values_a[index] = scalar_value(value[0], entry_path + "[0]");
    outcomes.values_b[index] = scalar_value(value[1], entry_path + "[1]");
  }
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (!covered[i]) fail("outcomes", "missing entry for label '" + labels[i] + "'");

  GameSpec spec = [&] {
    try {
      return GameSpec(da, db, std::move(input), std::move(alice), std::move(bob), std::move(basis),
                      std::move(outcomes), std::move(entangler));
    } catch (const ValidationError& e) {
      fail("scenario", e.what());
    }
  }();

  std::optional<ParametricFamily> family;
  if (doc.contains("family")) {
    const json& fam = doc["family"];
    if (!fam.is_object()) fail("family", "expected an object");
    check_keys(fam, {"x_label", "y_label"}, "family", opts.strict);
    const json& x = require(fam, "x_label", "family");
    const json& y = require(fam, "y_label", "family");
    if (!x.is_string() || !y.is_string()) fail("family", "labels must be strings");
    try {
      family.emplace(spec, x.get<std::string>(), y.get<std::string>());
    } catch (const ValidationError& e) {
      fail("family", e.what());
    }
  }

  return LoadedScenario{name.get<std::string>(), version.get<int>(), std::move(spec),
                        std::move(family)};
}

LoadedScenario load_scenario_file(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("scenario: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) throw ValidationError("scenario: cannot read '" + path + "'");
  try {
    return parse_scenario(buffer.str(), opts);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string scenario_to_json(const LoadedScenario& scenario) {
  const GameSpec& spec = scenario.spec;
  json doc = json::object();
  doc["schema_version"] = scenario.schema_version;
  doc["name"] = scenario.name;
  doc["subsystem_dims"] = json::array({spec.dim_a(), spec.dim_b()});

  const auto computational_labels = default_basis_labels(spec.dim_a(), spec.dim_b());
  json state = json::array();
  for (std::size_t i = 0; i < spec.input().dim(); ++i) {
    const Complex& amp = spec.input().amp(i);
    if (amp == Complex{0.0, 0.0}) continue;
    json entry = json::object();
    entry["label"] = computational_labels[i];
    entry["re"] = amp.real();
    entry["im"] = amp.imag();
    state.push_back(std::move(entry));
  }
  doc["input_state"] = std::move(state);

  doc["alice_ops"] = ops_to_json(spec.alice());
  doc["bob_ops"] = ops_to_json(spec.bob());
  if (spec.entangler()) doc["entangler"] = matrix_to_json(spec.entangler()->matrix());

  json meas = json::object();
  meas["labels"] = spec.basis().labels();
  if (spec.basis().basis_change())
    meas["basis_change"] = matrix_to_json(spec.basis().basis_change()->matrix());
  doc["measurement"] = std::move(meas);

  json outcomes = json::object();
  for (std::size_t i = 0; i < spec.basis().dim(); ++i)
    outcomes[spec.basis().labels()[i]] =
        json::array({spec.outcomes().values_a[i], spec.outcomes().values_b[i]});
  doc["outcomes"] = std::move(outcomes);

  if (scenario.family) {
    json fam = json::object();
    fam["x_label"] = scenario.family->x_label();
    fam["y_label"] = scenario.family->y_label();
    doc["family"] = std::move(fam);
  }
  return doc.dump(2) + "\n";
}

}  // namespace qgames
