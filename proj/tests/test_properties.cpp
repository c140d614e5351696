#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "qgames/analysis.hpp"
#include "qgames/channel.hpp"
#include "qgames/engine.hpp"
#include "qgames/quantum.hpp"
#include "qgames/random.hpp"
#include "qgames/tolerances.hpp"

using namespace qgames;
using namespace testfx;

namespace {

constexpr int kCases = 500;

PayoffMatrix random_int_payoffs(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::string> row_names;
  std::vector<std::string> col_names;
  for (std::size_t j = 0; j < rows; ++j) row_names.push_back("r" + std::to_string(j));
  for (std::size_t k = 0; k < cols; ++k) col_names.push_back("c" + std::to_string(k));
  std::vector<PayoffCell> cells;
  for (std::size_t i = 0; i < rows * cols; ++i)
    cells.push_back({static_cast<double>(dist(rng)), static_cast<double>(dist(rng))});
  return PayoffMatrix(std::move(row_names), std::move(col_names), std::move(cells));
}

/// Reference equilibrium finder: precompute column/row maxima, then admit
/// every cell within the tie tolerance of both.
std::vector<std::pair<std::size_t, std::size_t>> nash_oracle(const PayoffMatrix& pm) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < pm.rows(); ++j) {
    for (std::size_t k = 0; k < pm.cols(); ++k) {
      double best_a = pm.at(0, k).a;
      for (std::size_t jj = 1; jj < pm.rows(); ++jj) best_a = std::max(best_a, pm.at(jj, k).a);
      double best_b = pm.at(j, 0).b;
      for (std::size_t kk = 1; kk < pm.cols(); ++kk) best_b = std::max(best_b, pm.at(j, kk).b);
      if (pm.at(j, k).a >= best_a - kTieTol && pm.at(j, k).b >= best_b - kTieTol)
        out.emplace_back(j, k);
    }
  }
  return out;
}

bool same_form(const GameForm& x, const GameForm& y) {
  return x.label == y.label && x.relabeled == y.relabeled && x.alice.groups == y.alice.groups &&
         x.bob.groups == y.bob.groups;
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("unitary evolution preserves norm and probability completeness") {
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<std::size_t> dim_dist(2, 8);
    for (int i = 0; i < kCases; ++i) {
      const std::size_t dim = dim_dist(rng);
      const UnitaryOperator u = random_unitary(dim, rng);
      const StateVector psi = apply(u, random_state(dim, rng));
      double norm = 0.0;
      for (std::size_t n = 0; n < dim; ++n) norm += std::norm(psi.amp(n));
      REQUIRE(std::abs(norm - 1.0) < 1e-12);

      const auto probs = measure_probs(psi, MeasurementBasis(subsystem_labels(dim)));
      double sum = 0.0;
      for (double p : probs) {
        REQUIRE(p >= 0.0);
        REQUIRE(p <= 1.0);
        sum += p;
      }
      REQUIRE(std::abs(sum - 1.0) < 1e-12);
    }
  }

  TEST_CASE("evolved and dephased densities keep trace and hermiticity") {
    std::mt19937_64 rng(1002);
    std::uniform_real_distribution<double> lam(0.0, 1.0);
    const auto basis = MeasurementBasis::computational(2, 2);
    for (int i = 0; i < kCases; ++i) {
      const DensityMatrix rho = density_from_pure(random_state(4, rng));
      const DensityMatrix evolved = evolve(random_unitary(4, rng), rho);
      const DensityMatrix flattened = dephase(evolved, DephasingChannel(lam(rng)), basis);

      for (const DensityMatrix* m : {&evolved, &flattened}) {
        REQUIRE(std::abs(m->matrix().trace() - Complex{1, 0}) < 1e-12);
        REQUIRE(max_abs_diff(m->matrix(), m->matrix().adjoint()) < 1e-12);
      }
      for (std::size_t n = 0; n < 4; ++n)
        REQUIRE(std::abs(flattened.matrix()(n, n) - evolved.matrix()(n, n)) < 1e-15);
    }
  }

  TEST_CASE("induced channels are stochastic and reproduce their game") {
    std::mt19937_64 rng(1003);
    for (int i = 0; i < kCases; ++i) {
      const GameSpec spec = random_joint_game(rng);
      const ChannelMatrix ch = channel_from_game(spec);
      for (std::size_t j = 0; j < ch.alice_count(); ++j) {
        for (std::size_t k = 0; k < ch.bob_count(); ++k) {
          double sum = 0.0;
          for (std::size_t o = 0; o < ch.output_count(); ++o) {
            REQUIRE(ch.prob(j, k, o) >= 0.0);
            sum += ch.prob(j, k, o);
          }
          REQUIRE(std::abs(sum - 1.0) < 1e-12);
        }
      }
      REQUIRE(payoff_max_diff(expected_payoffs(spec),
                              expected_payoffs_channel(ch, spec.outcomes())) < 1e-10);
    }
  }

  TEST_CASE("two-amplitude families stay affine under phased permutations") {
    std::mt19937_64 rng(1004);
    std::uniform_int_distribution<std::size_t> idx(0, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto labels = default_basis_labels(2, 2);
    for (int i = 0; i < kCases; ++i) {
      GameSpec spec = unit(rng) < 0.5
                          ? random_permutation_game(rng, StateVector::basis_state(4, 0))
                          : GameSpec(2, 2, StateVector::basis_state(4, 0),
                                     {{"a0", random_phased_permutation(4, rng), OpScope::kJoint},
                                      {"a1", random_phased_permutation(4, rng), OpScope::kJoint}},
                                     {{"b0", random_phased_permutation(4, rng), OpScope::kJoint},
                                      {"b1", random_phased_permutation(4, rng), OpScope::kJoint}},
                                     MeasurementBasis::computational(2, 2),
                                     random_outcomes(4, rng));
      std::size_t x = idx(rng);
      std::size_t y = idx(rng);
      if (x == y) y = (y + 1) % 4;
      const ParametricFamily fam(std::move(spec), labels[x], labels[y]);

      const auto la = payoff_lines(fam, Player::kA);
      const auto lb = payoff_lines(fam, Player::kB);
      for (double p : {unit(rng), unit(rng), 0.0, 1.0}) {
        const PayoffMatrix pm = fam.payoffs_at(p);
        for (std::size_t j = 0; j < 2; ++j) {
          for (std::size_t k = 0; k < 2; ++k) {
            REQUIRE(std::abs(pm.at(j, k).a - la[2 * j + k].at(p)) < 1e-10);
            REQUIRE(std::abs(pm.at(j, k).b - lb[2 * j + k].at(p)) < 1e-10);
          }
        }
      }
    }
  }

  TEST_CASE("region partitions tile the interval with constant classification") {
    std::mt19937_64 rng(1005);
    const auto labels = default_basis_labels(2, 2);
    std::uniform_int_distribution<std::size_t> idx(0, 3);
    for (int i = 0; i < kCases; ++i) {
      std::size_t x = idx(rng);
      std::size_t y = idx(rng);
      if (x == y) y = (y + 1) % 4;
      const ParametricFamily fam(random_permutation_game(rng, StateVector::basis_state(4, 0)),
                                 labels[x], labels[y]);
      const RegionReport rep = region_analysis(fam);

      REQUIRE_FALSE(rep.regions.empty());
      REQUIRE(rep.regions.front().lo == 0.0);
      REQUIRE(rep.regions.back().hi == 1.0);
      for (std::size_t r = 0; r + 1 < rep.regions.size(); ++r) {
        REQUIRE(rep.regions[r].hi == rep.regions[r + 1].lo);
        REQUIRE(rep.regions[r].lo < rep.regions[r].hi);
      }
      REQUIRE(std::is_sorted(rep.breakpoints.begin(), rep.breakpoints.end()));

      // No strict preference reversal may survive inside one region: any
      // sign flip of a line difference marks a crossing, and crossings are
      // region boundaries. Ties near merged breakpoints are allowed.
      const auto lines_a = payoff_lines(fam, Player::kA);
      const auto lines_b = payoff_lines(fam, Player::kB);
      const auto sign_at = [](const AffineCell& u, const AffineCell& v, double p) {
        const double d = u.at(p) - v.at(p);
        if (d > kTieTol) return 1;
        if (d < -kTieTol) return -1;
        return 0;
      };
      for (const Region& region : rep.regions) {
        if (region.hi - region.lo < 1e-6) continue;
        for (const auto* lines : {&lines_a, &lines_b}) {
          for (std::size_t u = 0; u < 4; ++u) {
            for (std::size_t v = u + 1; v < 4; ++v) {
              bool pos = false;
              bool neg = false;
              for (double frac : {0.31, 0.5, 0.73}) {
                const double p = region.lo + frac * (region.hi - region.lo);
                const int s = sign_at((*lines)[u], (*lines)[v], p);
                pos |= s > 0;
                neg |= s < 0;
              }
              REQUIRE_FALSE((pos && neg));
            }
          }
        }
      }
    }
  }

  TEST_CASE("positive affine payoff rescaling never changes the analysis") {
    std::mt19937_64 rng(1006);
    std::uniform_real_distribution<double> scale(0.25, 8.0);
    std::uniform_real_distribution<double> shift(-10.0, 10.0);
    for (int i = 0; i < kCases; ++i) {
      const PayoffMatrix pm = random_int_payoffs(rng, 2, 2, -9, 9);
      const double aa = scale(rng), ab = shift(rng);
      const double ba = scale(rng), bb = shift(rng);
      std::vector<PayoffCell> cells;
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
          cells.push_back({aa * pm.at(j, k).a + ab, ba * pm.at(j, k).b + bb});
      const PayoffMatrix scaled(pm.row_names(), pm.col_names(), std::move(cells));

      REQUIRE(same_form(classify(pm), classify(scaled)));
      REQUIRE(ordering_of(pm, Player::kA).groups == ordering_of(scaled, Player::kA).groups);
      REQUIRE(ordering_of(pm, Player::kB).groups == ordering_of(scaled, Player::kB).groups);
      REQUIRE(pure_nash(pm) == pure_nash(scaled));
    }
  }

  TEST_CASE("pure equilibria match the brute-force oracle") {
    std::mt19937_64 rng(1007);
    std::uniform_int_distribution<std::size_t> shape(2, 4);
    for (int i = 0; i < kCases; ++i) {
      const PayoffMatrix pm = random_int_payoffs(rng, shape(rng), shape(rng), -5, 5);
      REQUIRE(pure_nash(pm) == nash_oracle(pm));
    }
  }

  TEST_CASE("swapping the family ends mirrors the payoff table") {
    std::mt19937_64 rng(1008);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const ParametricFamily fam(flip_game(StateVector::basis_state(4, 0)), "00", "11");
    for (int i = 0; i < kCases; ++i) {
      const double p = unit(rng);
      const PayoffMatrix at_p = fam.payoffs_at(p);
      const PayoffMatrix at_q = fam.payoffs_at(1.0 - p);
      for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
          REQUIRE(std::abs(at_p.at(j, k).a - at_q.at(1 - j, 1 - k).a) < 1e-12);
          REQUIRE(std::abs(at_p.at(j, k).b - at_q.at(1 - j, 1 - k).b) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("independent bit flips preserve the dilemma form") {
    std::mt19937_64 rng(1009);
    std::uniform_real_distribution<double> low(0.001, 0.49);
    std::uniform_real_distribution<double> high(0.51, 0.999);
    for (int i = 0; i < kCases; ++i) {
      const double eps_low = low(rng);
      const GameForm direct = classify(expected_payoffs_channel(
          bit_channel({BitChannelSpec::Kind::kIndependentFlip, eps_low, 1}),
          prisoners_dilemma_outcomes()));
      REQUIRE(direct.label == GameFormLabel::kPrisonersDilemma);
      REQUIRE_FALSE(direct.relabeled);

      const double eps_high = high(rng);
      const GameForm mirrored = classify(expected_payoffs_channel(
          bit_channel({BitChannelSpec::Kind::kIndependentFlip, eps_high, 1}),
          prisoners_dilemma_outcomes()));
      REQUIRE(mirrored.label == GameFormLabel::kPrisonersDilemma);
      REQUIRE(mirrored.relabeled);
    }
  }

  TEST_CASE("both mixed payoff routes agree on a dense grid") {
    for (int ip = 0; ip <= 20; ++ip) {
      for (int iq = 0; iq <= 20; ++iq) {
        for (int ie = 0; ie <= 20; ++ie) {
          const MixedProfile prof{ip / 20.0, iq / 20.0};
          const double eps = ie / 20.0;
          const PayoffCell lhs = mixed_payoff(prof, eps);
          const PayoffCell rhs = mixed_payoff_from_probs(prof, eps);
          REQUIRE(std::abs(lhs.a - rhs.a) < 1e-12);
          REQUIRE(std::abs(lhs.b - rhs.b) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("the prescribed sweep is symmetric in the noise level") {
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < kCases; ++i) {
      const double eps = unit(rng);
      const PayoffCell lhs = mixed_payoff(profile_for(ProfileRule::kPrescribed, eps), eps);
      const PayoffCell rhs =
          mixed_payoff(profile_for(ProfileRule::kPrescribed, 1.0 - eps), 1.0 - eps);
      REQUIRE(std::abs(lhs.a - rhs.a) < 1e-12);
      REQUIRE(std::abs(lhs.a - lhs.b) < 1e-12);
    }
  }

  TEST_CASE("frame conjugation is payoff-invariant for random games") {
    std::mt19937_64 rng(1011);
    const auto basis = MeasurementBasis::computational(2, 2);
    for (int i = 0; i < 100; ++i) {
      const UnitaryOperator e = random_unitary(4, rng);
      std::vector<NamedOperator> alice{{"a0", random_unitary(4, rng), OpScope::kJoint},
                                       {"a1", random_unitary(4, rng), OpScope::kJoint}};
      std::vector<NamedOperator> bob{{"b0", random_unitary(4, rng), OpScope::kJoint},
                                     {"b1", random_unitary(4, rng), OpScope::kJoint}};
      const StateVector input = random_state(4, rng);
      const OutcomeMap outs = random_outcomes(4, rng);
      const GameSpec framed(2, 2, input, alice, bob, basis, outs, e);
      const GameSpec rewritten(2, 2, input, ewl_conjugate(e, alice), ewl_conjugate(e, bob),
                               basis, outs);
      REQUIRE(payoff_max_diff(expected_payoffs(framed), expected_payoffs(rewritten)) < 1e-10);
    }
  }
}
