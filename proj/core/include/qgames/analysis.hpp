#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qgames/engine.hpp"

namespace qgames {

/// A player's ranking of the cells of a 2x2 game. Cells are numbered in row
/// order: O1 = (row 0, col 0), O2 = (row 0, col 1), O3 = (row 1, col 0),
/// O4 = (row 1, col 1). groups lists cell indices from most to least
/// preferred; cells within a group differ by at most the tie tolerance.
struct PreferenceOrdering {
  Player player = Player::kA;
  std::vector<std::vector<int>> groups;

  bool strict() const;
  /// e.g. "O3 > O1 = O2 > O4".
  std::string to_string() const;
};

PreferenceOrdering ordering_of(const PayoffMatrix& pm, Player player);

enum class GameFormLabel { kPrisonersDilemma, kChicken, kOther, kDegenerate };

/// Classification of a 2x2 game by both players' preference orderings.
/// relabeled marks a match found after both players swap their strategies
/// (the same game with rows and columns renamed).
struct GameForm {
  GameFormLabel label = GameFormLabel::kOther;
  bool relabeled = false;
  PreferenceOrdering alice;
  PreferenceOrdering bob;

  /// e.g. "chicken (relabeled)".
  std::string signature() const;
};

std::string to_string(GameFormLabel label);

/// Matches the orderings against the dilemma and chicken patterns, direct
/// and relabeled. Non-2x2 games are kOther. kDegenerate flags games where
/// ties are the only thing blocking a named match.
GameForm classify(const PayoffMatrix& pm);

/// All pure strategy pairs where neither player gains more than the tie
/// tolerance by deviating. Sorted by (row, col).
std::vector<std::pair<std::size_t, std::size_t>> pure_nash(const PayoffMatrix& pm);

/// One-parameter family of games sharing everything but the input state,
/// which interpolates between two basis states:
/// sqrt(p) |x_label> + sqrt(1-p) |y_label>.
class ParametricFamily {
 public:
  ParametricFamily(GameSpec skeleton, std::string x_label, std::string y_label);

  const GameSpec& skeleton() const { return skeleton_; }
  const std::string& x_label() const { return x_label_; }
  const std::string& y_label() const { return y_label_; }

  StateVector state_at(double p) const;
  GameSpec spec_at(double p) const;
  PayoffMatrix payoffs_at(double p) const;

 private:
  GameSpec skeleton_;
  std::string x_label_;
  std::string y_label_;
  std::size_t x_index_;
  std::size_t y_index_;
};

/// Payoff of one cell as a function of the family parameter: value(p) =
/// c0 + c1 * p.
struct AffineCell {
  double c0 = 0.0;
  double c1 = 0.0;

  double at(double p) const { return c0 + c1 * p; }
};

/// Affine coefficients for every cell, one entry per cell in row order.
std::vector<AffineCell> payoff_lines(const ParametricFamily& family, Player player);

struct Region {
  double lo = 0.0;
  double hi = 1.0;
  GameForm form;
};

struct RegionReport {
  std::vector<double> breakpoints;  // interior, strictly increasing
  std::vector<Region> regions;      // covers (0, 1) in order
};

/// Splits (0, 1) at every parameter value where two payoff lines of either
/// player cross, then classifies each open interval at its midpoint.
/// Requires every cell payoff to be affine in p; games whose operators mix
/// the two family amplitudes are rejected with a diagnostic.
RegionReport region_analysis(const ParametricFamily& family);

struct CurvePoint {
  double p = 0.0;
  std::vector<double> values;  // one per cell, row order
};

/// Samples the exact cell payoffs for one player on a uniform grid over
/// [0, 1] (grid points including both endpoints).
std::vector<CurvePoint> emit_payoff_curves(const ParametricFamily& family, Player player,
                                           std::size_t grid);

}  // namespace qgames
