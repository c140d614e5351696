#include "qgames/channel.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <utility>

#include "qgames/errors.hpp"
#include "qgames/tolerances.hpp"

namespace qgames {

ChannelMatrix::ChannelMatrix(std::vector<std::string> alice_inputs,
                             std::vector<std::string> bob_inputs,
                             std::vector<std::string> outputs, std::vector<double> probs)
    : alice_inputs_(std::move(alice_inputs)),
      bob_inputs_(std::move(bob_inputs)),
      outputs_(std::move(outputs)),
      probs_(std::move(probs)) {
  if (alice_inputs_.empty() || bob_inputs_.empty() || outputs_.empty())
    throw ValidationError("channel: empty input or output set");
  if (probs_.size() != alice_inputs_.size() * bob_inputs_.size() * outputs_.size())
    throw ValidationError("channel: probability table size mismatch");
  for (std::size_t row = 0; row < alice_inputs_.size() * bob_inputs_.size(); ++row) {
    double sum = 0.0;
    for (std::size_t out = 0; out < outputs_.size(); ++out) {
      double& v = probs_[row * outputs_.size() + out];
      if (!std::isfinite(v)) throw NumericalError("channel: non-finite probability");
      if (v < 0.0) {
        if (v < -1e-12) throw NumericalError("channel: negative probability");
        v = 0.0;
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kNormTol)
      throw NumericalError("channel: row " + std::to_string(row) + " sums to " +
                           std::to_string(sum));
  }
}

double ChannelMatrix::prob(std::size_t j, std::size_t k, std::size_t out) const {
  if (j >= alice_count() || k >= bob_count() || out >= output_count())
    throw ValidationError("channel: index out of range");
  return probs_[(j * bob_count() + k) * output_count() + out];
}

ChannelMatrix channel_from_game(const GameSpec& spec) {
  std::vector<std::string> alice_names;
  std::vector<std::string> bob_names;
  for (const auto& op : spec.alice()) alice_names.push_back(op.name);
  for (const auto& op : spec.bob()) bob_names.push_back(op.name);
  std::vector<double> probs;
  probs.reserve(alice_names.size() * bob_names.size() * spec.joint_dim());
  for (std::size_t j = 0; j < alice_names.size(); ++j) {
    for (std::size_t k = 0; k < bob_names.size(); ++k) {
      const auto row = measure_probs(output_state(spec, j, k), spec.basis());
      probs.insert(probs.end(), row.begin(), row.end());
    }
  }
  return ChannelMatrix(std::move(alice_names), std::move(bob_names), spec.basis().labels(),
                       std::move(probs));
}

PayoffMatrix expected_payoffs_channel(const ChannelMatrix& channel, const OutcomeMap& outcomes) {
  if (outcomes.values_a.size() != channel.output_count() ||
      outcomes.values_b.size() != channel.output_count())
    throw ValidationError("channel: outcome map does not cover the outputs");
  std::vector<PayoffCell> cells;
  cells.reserve(channel.alice_count() * channel.bob_count());
  for (std::size_t j = 0; j < channel.alice_count(); ++j) {
    for (std::size_t k = 0; k < channel.bob_count(); ++k) {
      PayoffCell cell;
      for (std::size_t out = 0; out < channel.output_count(); ++out) {
        const double p = channel.prob(j, k, out);
        cell.a += p * outcomes.values_a[out];
        cell.b += p * outcomes.values_b[out];
      }
      cells.push_back(cell);
    }
  }
  return PayoffMatrix(channel.alice_inputs(), channel.bob_inputs(), std::move(cells));
}

namespace {

void check_unit_interval(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0)
    throw ValidationError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

ChannelMatrix bit_channel(const BitChannelSpec& spec) {
  check_unit_interval(spec.epsilon, "bit channel: epsilon");
  if (spec.bits_per_player == 0) throw ValidationError("bit channel: needs at least one bit");
  const std::size_t total_bits = 2 * spec.bits_per_player;
  if (total_bits >= 8 * sizeof(std::size_t) || (std::size_t{1} << total_bits) > kMaxDim)
    throw ValidationError("bit channel: output space exceeds limit");
  const std::size_t per_player = std::size_t{1} << spec.bits_per_player;
  const std::size_t n_out = per_player * per_player;
  const std::size_t all_mask = n_out - 1;
  const double eps = spec.epsilon;

  const auto inputs = subsystem_labels(per_player);
  auto outputs = default_basis_labels(per_player, per_player);
  std::vector<double> probs(n_out * n_out, 0.0);
  for (std::size_t j = 0; j < per_player; ++j) {
    for (std::size_t k = 0; k < per_player; ++k) {
      // Players flip their own zero-initialized bits, so the noiseless word
      // is just the concatenated strategy masks.
      const std::size_t base = (j << spec.bits_per_player) | k;
      double* row = probs.data() + (j * per_player + k) * n_out;
      if (spec.kind == BitChannelSpec::Kind::kCorrelatedFlip) {
        row[base] += 1.0 - eps;
        row[base ^ all_mask] += eps;
      } else {
        for (std::size_t flip = 0; flip < n_out; ++flip) {
          const int flipped = std::popcount(flip);
          row[base ^ flip] += std::pow(eps, flipped) *
                              std::pow(1.0 - eps, static_cast<int>(total_bits) - flipped);
        }
      }
    }
  }
  return ChannelMatrix(inputs, inputs, std::move(outputs), std::move(probs));
}

FactorizationReport factorization_test(const ChannelMatrix& channel, std::size_t dim_a_out) {
  if (dim_a_out == 0 || channel.output_count() % dim_a_out != 0)
    throw ValidationError("factorization: output split does not divide the output count");
  const std::size_t dim_b_out = channel.output_count() / dim_a_out;
  FactorizationReport report;
  for (std::size_t j = 0; j < channel.alice_count(); ++j) {
    for (std::size_t k = 0; k < channel.bob_count(); ++k) {
      std::vector<double> ma(dim_a_out, 0.0);
      std::vector<double> mb(dim_b_out, 0.0);
      for (std::size_t a = 0; a < dim_a_out; ++a) {
        for (std::size_t b = 0; b < dim_b_out; ++b) {
          const double p = channel.prob(j, k, a * dim_b_out + b);
          ma[a] += p;
          mb[b] += p;
        }
      }
      RowFactorization row;
      row.alice = j;
      row.bob = k;
      for (std::size_t a = 0; a < dim_a_out; ++a)
        for (std::size_t b = 0; b < dim_b_out; ++b)
          row.deviation = std::max(
              row.deviation, std::abs(channel.prob(j, k, a * dim_b_out + b) - ma[a] * mb[b]));
      row.factorizes = row.deviation <= kFactorTol;
      report.max_deviation = std::max(report.max_deviation, row.deviation);
      if (!row.factorizes) report.correlated = true;
      report.rows.push_back(row);
    }
  }
  return report;
}

namespace {

std::array<double, 4> strategy_pair_probs(const MixedProfile& profile) {
  check_unit_interval(profile.p, "mixed play: p");
  check_unit_interval(profile.q, "mixed play: q");
  const double p = profile.p;
  const double q = profile.q;
  return {(1.0 - p) * (1.0 - q), (1.0 - p) * q, p * (1.0 - q), p * q};
}

void check_two_bit_outcomes(const OutcomeMap& outcomes) {
  if (outcomes.values_a.size() != 4 || outcomes.values_b.size() != 4)
    throw ValidationError("mixed play: outcome map must cover the four 2-bit outcomes");
}

}  // namespace

std::vector<double> mixed_joint_probs(const MixedProfile& profile, double epsilon) {
  check_unit_interval(epsilon, "mixed play: epsilon");
  const auto s = strategy_pair_probs(profile);
  std::vector<double> out(4);
  // The correlated flip either leaves the strategy word alone or complements
  // it, so outcome i collects the clean weight of i and the flipped weight of
  // its complement.
  for (std::size_t i = 0; i < 4; ++i) out[i] = (1.0 - epsilon) * s[i] + epsilon * s[3 - i];
  return out;
}

PayoffCell mixed_payoff(const MixedProfile& profile, double epsilon, const OutcomeMap& outcomes) {
  check_unit_interval(epsilon, "mixed play: epsilon");
  check_two_bit_outcomes(outcomes);
  const auto s = strategy_pair_probs(profile);
  PayoffCell cell;
  for (std::size_t i = 0; i < 4; ++i) {
    const double wa = (1.0 - epsilon) * outcomes.values_a[i] + epsilon * outcomes.values_a[3 - i];
    const double wb = (1.0 - epsilon) * outcomes.values_b[i] + epsilon * outcomes.values_b[3 - i];
    cell.a += s[i] * wa;
    cell.b += s[i] * wb;
  }
  return cell;
}

PayoffCell mixed_payoff_from_probs(const MixedProfile& profile, double epsilon,
                                   const OutcomeMap& outcomes) {
  check_two_bit_outcomes(outcomes);
  const auto probs = mixed_joint_probs(profile, epsilon);
  PayoffCell cell;
  for (std::size_t i = 0; i < 4; ++i) {
    cell.a += probs[i] * outcomes.values_a[i];
    cell.b += probs[i] * outcomes.values_b[i];
  }
  return cell;
}

BestResponse mixed_best_response(double epsilon, double q, const OutcomeMap& outcomes) {
  const double at0 = mixed_payoff({0.0, q}, epsilon, outcomes).a;
  const double at1 = mixed_payoff({1.0, q}, epsilon, outcomes).a;
  BestResponse best;
  best.derivative = at1 - at0;
  if (best.derivative > kTieTol) {
    best.lo = best.hi = 1.0;
  } else if (best.derivative < -kTieTol) {
    best.lo = best.hi = 0.0;
  } else {
    best.lo = 0.0;
    best.hi = 1.0;
  }
  return best;
}

MixedProfile profile_for(ProfileRule rule, double epsilon, const OutcomeMap& outcomes) {
  check_unit_interval(epsilon, "mixed play: epsilon");
  if (rule == ProfileRule::kPrescribed) return {1.0 - epsilon, 1.0 - epsilon};

  // The derivative in p is affine in q; the symmetric profile sits at its
  // root when one lies in [0, 1], otherwise at the edge the sign favors.
  const double der0 = mixed_best_response(epsilon, 0.0, outcomes).derivative;
  const double der1 = mixed_best_response(epsilon, 1.0, outcomes).derivative;
  const double slope = der1 - der0;
  if (std::abs(slope) > 1e-12) {
    const double root = -der0 / slope;
    if (root >= 0.0 && root <= 1.0) return {root, root};
  }
  const double mid = der0 + 0.5 * slope;
  if (mid > kTieTol) return {1.0, 1.0};
  if (mid < -kTieTol) return {0.0, 0.0};
  return {0.5, 0.5};
}

std::vector<SweepPoint> sweep_epsilon(ProfileRule rule, std::size_t grid,
                                      const OutcomeMap& outcomes) {
  if (grid < 2) throw ValidationError("sweep: grid needs at least two points");
  std::vector<SweepPoint> out;
  out.reserve(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double eps = static_cast<double>(i) / static_cast<double>(grid - 1);
    const MixedProfile profile = profile_for(rule, eps, outcomes);
    const PayoffCell cell = mixed_payoff(profile, eps, outcomes);
    out.push_back({eps, cell.a, cell.b});
  }
  return out;
}

}  // namespace qgames
