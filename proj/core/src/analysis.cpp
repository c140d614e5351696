#include "qgames/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qgames/errors.hpp"
#include "qgames/tolerances.hpp"

namespace qgames {

namespace {

std::vector<double> cell_values(const PayoffMatrix& pm, Player player) {
  std::vector<double> v;
  v.reserve(pm.rows() * pm.cols());
  for (std::size_t j = 0; j < pm.rows(); ++j)
    for (std::size_t k = 0; k < pm.cols(); ++k)
      v.push_back(player == Player::kA ? pm.at(j, k).a : pm.at(j, k).b);
  return v;
}

enum class Match { kYes, kTied, kNo };

/// Checks whether values[pattern[0]] >= values[pattern[1]] >= ... holds, with
/// kYes only when every step is strict beyond the tie tolerance.
Match match_pattern(const std::vector<double>& values, const std::vector<int>& pattern) {
  bool tied = false;
  for (std::size_t i = 0; i + 1 < pattern.size(); ++i) {
    const double d = values[static_cast<std::size_t>(pattern[i])] -
                     values[static_cast<std::size_t>(pattern[i + 1])];
    if (d < -kTieTol) return Match::kNo;
    if (d <= kTieTol) tied = true;
  }
  return tied ? Match::kTied : Match::kYes;
}

/// Swapping both players' strategies sends cell i to cell 3-i in a 2x2 game.
std::vector<int> relabel(const std::vector<int>& pattern) {
  std::vector<int> out;
  out.reserve(pattern.size());
  for (int i : pattern) out.push_back(3 - i);
  return out;
}

}  // namespace

bool PreferenceOrdering::strict() const {
  return std::all_of(groups.begin(), groups.end(),
                     [](const std::vector<int>& g) { return g.size() == 1; });
}

std::string PreferenceOrdering::to_string() const {
  std::string s;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (g > 0) s += " > ";
    for (std::size_t i = 0; i < groups[g].size(); ++i) {
      if (i > 0) s += " = ";
      s += "O" + std::to_string(groups[g][i] + 1);
    }
  }
  return s;
}

PreferenceOrdering ordering_of(const PayoffMatrix& pm, Player player) {
  const auto values = cell_values(pm, player);
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(b)];
  });
  PreferenceOrdering out;
  out.player = player;
  for (std::size_t i = 0; i < order.size(); ++i) {
    // Chain into the previous group when adjacent sorted values are within
    // the tie tolerance of each other.
    const bool chain =
        i > 0 && values[static_cast<std::size_t>(order[i - 1])] -
                         values[static_cast<std::size_t>(order[i])] <=
                     kTieTol;
    if (!chain) out.groups.emplace_back();
    out.groups.back().push_back(order[i]);
  }
  return out;
}

std::string to_string(GameFormLabel label) {
  switch (label) {
    case GameFormLabel::kPrisonersDilemma:
      return "prisoners_dilemma";
    case GameFormLabel::kChicken:
      return "chicken";
    case GameFormLabel::kOther:
      return "other";
    case GameFormLabel::kDegenerate:
      return "degenerate";
  }
  return "other";
}

std::string GameForm::signature() const {
  std::string s = qgames::to_string(label);
  if (relabeled) s += " (relabeled)";
  return s;
}

GameForm classify(const PayoffMatrix& pm) {
  GameForm form;
  form.alice = ordering_of(pm, Player::kA);
  form.bob = ordering_of(pm, Player::kB);
  if (pm.rows() != 2 || pm.cols() != 2) {
    form.label = GameFormLabel::kOther;
    return form;
  }

  const auto va = cell_values(pm, Player::kA);
  const auto vb = cell_values(pm, Player::kB);

  // Most to least preferred cell, per player. The dilemma rewards unilateral
  // defection above mutual cooperation; chicken ranks mutual defection last.
  const std::vector<int> pd_a{2, 0, 3, 1};
  const std::vector<int> pd_b{1, 0, 3, 2};
  const std::vector<int> ch_a{2, 0, 1, 3};
  const std::vector<int> ch_b{1, 0, 2, 3};

  struct Candidate {
    GameFormLabel label;
    bool relabeled;
    const std::vector<int>& a;
    const std::vector<int>& b;
  };
  const std::vector<int> pd_a_r = relabel(pd_a);
  const std::vector<int> pd_b_r = relabel(pd_b);
  const std::vector<int> ch_a_r = relabel(ch_a);
  const std::vector<int> ch_b_r = relabel(ch_b);
  const Candidate candidates[] = {
      {GameFormLabel::kPrisonersDilemma, false, pd_a, pd_b},
      {GameFormLabel::kPrisonersDilemma, true, pd_a_r, pd_b_r},
      {GameFormLabel::kChicken, false, ch_a, ch_b},
      {GameFormLabel::kChicken, true, ch_a_r, ch_b_r},
  };

  bool tie_blocked = false;
  for (const auto& c : candidates) {
    const Match ma = match_pattern(va, c.a);
    const Match mb = match_pattern(vb, c.b);
    if (ma == Match::kNo || mb == Match::kNo) continue;
    if (ma == Match::kYes && mb == Match::kYes) {
      form.label = c.label;
      form.relabeled = c.relabeled;
      return form;
    }
    tie_blocked = true;
  }
  form.label = tie_blocked ? GameFormLabel::kDegenerate : GameFormLabel::kOther;
  return form;
}

std::vector<std::pair<std::size_t, std::size_t>> pure_nash(const PayoffMatrix& pm) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < pm.rows(); ++j) {
    for (std::size_t k = 0; k < pm.cols(); ++k) {
      bool stable = true;
      for (std::size_t jj = 0; jj < pm.rows() && stable; ++jj)
        if (pm.at(jj, k).a > pm.at(j, k).a + kTieTol) stable = false;
      for (std::size_t kk = 0; kk < pm.cols() && stable; ++kk)
        if (pm.at(j, kk).b > pm.at(j, k).b + kTieTol) stable = false;
      if (stable) out.emplace_back(j, k);
    }
  }
  return out;
}

ParametricFamily::ParametricFamily(GameSpec skeleton, std::string x_label, std::string y_label)
    : skeleton_(std::move(skeleton)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {
  const auto labels = default_basis_labels(skeleton_.dim_a(), skeleton_.dim_b());
  const auto find = [&](const std::string& label) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
      throw ValidationError("family: unknown basis label '" + label + "'");
    return static_cast<std::size_t>(it - labels.begin());
  };
  x_index_ = find(x_label_);
  y_index_ = find(y_label_);
  if (x_index_ == y_index_) throw ValidationError("family: endpoints must differ");
}

StateVector ParametricFamily::state_at(double p) const {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0)
    throw ValidationError("family: parameter must lie in [0, 1]");
  std::vector<Complex> amps(skeleton_.joint_dim(), Complex{0.0, 0.0});
  amps[x_index_] = Complex{std::sqrt(p), 0.0};
  amps[y_index_] = Complex{std::sqrt(1.0 - p), 0.0};
  return StateVector(std::move(amps));
}

GameSpec ParametricFamily::spec_at(double p) const {
  return skeleton_.with_input_state(state_at(p));
}

PayoffMatrix ParametricFamily::payoffs_at(double p) const {
  return expected_payoffs(spec_at(p));
}

namespace {

constexpr double kAffineCheckTol = 1e-9;

std::vector<AffineCell> lines_from_samples(const PayoffMatrix& at0, const PayoffMatrix& at_half,
                                           const PayoffMatrix& at1, Player player) {
  const auto v0 = cell_values(at0, player);
  const auto vh = cell_values(at_half, player);
  const auto v1 = cell_values(at1, player);
  std::vector<AffineCell> lines(v0.size());
  for (std::size_t i = 0; i < v0.size(); ++i) {
    lines[i].c0 = v0[i];
    lines[i].c1 = v1[i] - v0[i];
    // A cross term between the two family amplitudes scales with
    // sqrt(p(1-p)): zero at the endpoints, maximal at the midpoint. Checking
    // the midpoint therefore decides affineness exactly.
    const double dev = std::abs(vh[i] - lines[i].at(0.5));
    if (dev > kAffineCheckTol)
      throw ValidationError(
          "region analysis: cell " + std::to_string(i + 1) + " payoff is not affine in the "
          "family parameter (midpoint deviates by " + std::to_string(dev) +
          "); the strategy operators mix the two family amplitudes");
  }
  return lines;
}

}  // namespace

std::vector<AffineCell> payoff_lines(const ParametricFamily& family, Player player) {
  const PayoffMatrix at0 = family.payoffs_at(0.0);
  const PayoffMatrix at_half = family.payoffs_at(0.5);
  const PayoffMatrix at1 = family.payoffs_at(1.0);
  return lines_from_samples(at0, at_half, at1, player);
}

RegionReport region_analysis(const ParametricFamily& family) {
  const PayoffMatrix at0 = family.payoffs_at(0.0);
  const PayoffMatrix at_half = family.payoffs_at(0.5);
  const PayoffMatrix at1 = family.payoffs_at(1.0);

  std::vector<double> points;
  for (const Player player : {Player::kA, Player::kB}) {
    const auto lines = lines_from_samples(at0, at_half, at1, player);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const double slope_gap = lines[i].c1 - lines[j].c1;
        if (std::abs(slope_gap) < 1e-12) continue;  // parallel, no crossing
        const double p = (lines[j].c0 - lines[i].c0) / slope_gap;
        if (p > kTieTol && p < 1.0 - kTieTol) points.push_back(p);
      }
    }
  }
  std::sort(points.begin(), points.end());
  std::vector<double> breakpoints;
  for (double p : points) {
    if (breakpoints.empty() || p - breakpoints.back() > kTieTol) breakpoints.push_back(p);
  }

  RegionReport report;
  report.breakpoints = breakpoints;
  std::vector<double> bounds{0.0};
  bounds.insert(bounds.end(), breakpoints.begin(), breakpoints.end());
  bounds.push_back(1.0);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Region region;
    region.lo = bounds[i];
    region.hi = bounds[i + 1];
    region.form = classify(family.payoffs_at(0.5 * (region.lo + region.hi)));
    report.regions.push_back(std::move(region));
  }
  return report;
}

std::vector<CurvePoint> emit_payoff_curves(const ParametricFamily& family, Player player,
                                           std::size_t grid) {
  if (grid < 2) throw ValidationError("curves: grid needs at least two points");
  std::vector<CurvePoint> out;
  out.reserve(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    CurvePoint pt;
    pt.p = static_cast<double>(i) / static_cast<double>(grid - 1);
    pt.values = cell_values(family.payoffs_at(pt.p), player);
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace qgames
