#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "qgames/analysis.hpp"
#include "qgames/channel.hpp"
#include "qgames/engine.hpp"
#include "qgames/quantum.hpp"
#include "qgames/random.hpp"

namespace testfx {

using namespace qgames;

inline UnitaryOperator pauli_x() { return UnitaryOperator(CMatrix({{0, 1}, {1, 0}})); }

inline UnitaryOperator hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return UnitaryOperator(CMatrix({{s, s}, {s, -s}}));
}

/// sqrt(p)|x> + sqrt(1-p)|y>.
inline StateVector two_amp_state(std::size_t dim, std::size_t x, std::size_t y, double p) {
  std::vector<Complex> amps(dim, Complex{0.0, 0.0});
  amps[x] = Complex{std::sqrt(p), 0.0};
  amps[y] = Complex{std::sqrt(1.0 - p), 0.0};
  return StateVector::normalized(std::move(amps));
}

/// sqrt(3/5)|00> + sqrt(2/5)|11>.
inline StateVector entangled_3_5() { return two_amp_state(4, 0, 3, 3.0 / 5.0); }

/// The 2x2x2 dilemma with local identity/flip strategies.
inline GameSpec flip_game(StateVector input) {
  std::vector<NamedOperator> alice{{"I", UnitaryOperator::identity(2), OpScope::kLocalA},
                                   {"F", pauli_x(), OpScope::kLocalA}};
  std::vector<NamedOperator> bob{{"I", UnitaryOperator::identity(2), OpScope::kLocalB},
                                 {"F", pauli_x(), OpScope::kLocalB}};
  return GameSpec(2, 2, std::move(input), std::move(alice), std::move(bob),
                  MeasurementBasis::computational(2, 2), prisoners_dilemma_outcomes());
}

/// Maximally entangling joint unitary (identity + i flip-flip) / sqrt(2).
inline UnitaryOperator maximal_entangler() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex is{0.0, s};
  return UnitaryOperator(CMatrix({{Complex{s, 0}, 0, 0, is},
                                  {0, Complex{s, 0}, is, 0},
                                  {0, is, Complex{s, 0}, 0},
                                  {is, 0, 0, Complex{s, 0}}}));
}

/// 2x2 payoff matrix from row-major cell values, strategy names I/F.
inline PayoffMatrix pm2(std::array<double, 4> a, std::array<double, 4> b) {
  std::vector<PayoffCell> cells;
  for (std::size_t i = 0; i < 4; ++i) cells.push_back({a[i], b[i]});
  return PayoffMatrix({"I", "F"}, {"I", "F"}, std::move(cells));
}

inline double payoff_max_diff(const PayoffMatrix& lhs, const PayoffMatrix& rhs) {
  double diff = 0.0;
  for (std::size_t j = 0; j < lhs.rows(); ++j) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      diff = std::max(diff, std::abs(lhs.at(j, k).a - rhs.at(j, k).a));
      diff = std::max(diff, std::abs(lhs.at(j, k).b - rhs.at(j, k).b));
    }
  }
  return diff;
}

/// Random game with joint 4x4 unitary strategies and random outcome values.
inline GameSpec random_joint_game(std::mt19937_64& rng, std::size_t n_ops = 2) {
  std::vector<NamedOperator> alice;
  std::vector<NamedOperator> bob;
  for (std::size_t i = 0; i < n_ops; ++i) {
    alice.push_back({"a" + std::to_string(i), random_unitary(4, rng), OpScope::kJoint});
    bob.push_back({"b" + std::to_string(i), random_unitary(4, rng), OpScope::kJoint});
  }
  return GameSpec(2, 2, random_state(4, rng), std::move(alice), std::move(bob),
                  MeasurementBasis::computational(2, 2), random_outcomes(4, rng));
}

/// Permutation matrix with random unit-modulus phases: maps basis states to
/// phased basis states, so two-basis-state families stay affine.
inline UnitaryOperator random_phased_permutation(std::size_t dim, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(dim);
  for (std::size_t i = 0; i < dim; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double t = angle(rng);
    m(perm[i], i) = Complex{std::cos(t), std::sin(t)};
  }
  return UnitaryOperator(std::move(m));
}

/// Random flip/no-flip style game: local phased permutations on each side.
inline GameSpec random_permutation_game(std::mt19937_64& rng, StateVector input) {
  std::vector<NamedOperator> alice{
      {"a0", random_phased_permutation(2, rng), OpScope::kLocalA},
      {"a1", random_phased_permutation(2, rng), OpScope::kLocalA}};
  std::vector<NamedOperator> bob{{"b0", random_phased_permutation(2, rng), OpScope::kLocalB},
                                 {"b1", random_phased_permutation(2, rng), OpScope::kLocalB}};
  return GameSpec(2, 2, std::move(input), std::move(alice), std::move(bob),
                  MeasurementBasis::computational(2, 2), random_outcomes(4, rng));
}

}  // namespace testfx
