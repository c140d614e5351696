#pragma once

#include <string>
#include <vector>

#include "qgames/engine.hpp"

namespace qgames {

/// Classical channel from joint strategy choices to measurement outcomes.
/// Row (j, k) holds the distribution over outputs when Alice plays her j-th
/// strategy and Bob his k-th.
class ChannelMatrix {
 public:
  /// probs is row-major over (j, k, output); every row must sum to 1 within
  /// kNormTol. Entries may carry rounding dust below zero, which is clamped.
  ChannelMatrix(std::vector<std::string> alice_inputs, std::vector<std::string> bob_inputs,
                std::vector<std::string> outputs, std::vector<double> probs);

  std::size_t alice_count() const { return alice_inputs_.size(); }
  std::size_t bob_count() const { return bob_inputs_.size(); }
  std::size_t output_count() const { return outputs_.size(); }
  const std::vector<std::string>& alice_inputs() const { return alice_inputs_; }
  const std::vector<std::string>& bob_inputs() const { return bob_inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  double prob(std::size_t j, std::size_t k, std::size_t out) const;

 private:
  std::vector<std::string> alice_inputs_;
  std::vector<std::string> bob_inputs_;
  std::vector<std::string> outputs_;
  std::vector<double> probs_;
};

/// The channel a game induces: row (j, k) is the outcome distribution of the
/// output state for that strategy pair. Feeding it back through the game's
/// outcome map reproduces the expected payoff table exactly.
ChannelMatrix channel_from_game(const GameSpec& spec);

/// Contracts each channel row with the outcome payoffs.
PayoffMatrix expected_payoffs_channel(const ChannelMatrix& channel, const OutcomeMap& outcomes);

/// Classical bit channel: each player submits a bit string (their strategy
/// flips none or all of their bits from 0), then noise flips bits before
/// readout. Correlated noise flips every bit of both players together with
/// probability epsilon; independent noise flips each bit on its own.
struct BitChannelSpec {
  enum class Kind { kCorrelatedFlip, kIndependentFlip };

  Kind kind = Kind::kCorrelatedFlip;
  double epsilon = 0.0;
  std::size_t bits_per_player = 1;
};

ChannelMatrix bit_channel(const BitChannelSpec& spec);

/// Whether one channel row is a product of per-player output marginals.
struct RowFactorization {
  std::size_t alice = 0;
  std::size_t bob = 0;
  double deviation = 0.0;  // max |P(a,b) - P_A(a) P_B(b)| over outputs
  bool factorizes = false;
};

struct FactorizationReport {
  std::vector<RowFactorization> rows;
  double max_deviation = 0.0;
  bool correlated = false;  // some row fails to factorize
};

/// Splits each output index as a * dim_b_out + b and tests every row against
/// the product of its marginals at kFactorTol.
FactorizationReport factorization_test(const ChannelMatrix& channel, std::size_t dim_a_out);

/// Symmetric mixed strategies over {I, F}: p and q are the flip
/// probabilities of Alice and Bob.
struct MixedProfile {
  double p = 0.0;
  double q = 0.0;
};

/// Outcome distribution over 00, 01, 10, 11 for mixed play through the
/// 1-bit correlated-flip channel.
std::vector<double> mixed_joint_probs(const MixedProfile& profile, double epsilon);

/// Expected payoffs for mixed play under correlated flip noise, computed by
/// mixing the clean and fully flipped strategy-pair payoffs.
PayoffCell mixed_payoff(const MixedProfile& profile, double epsilon,
                        const OutcomeMap& outcomes = prisoners_dilemma_outcomes());

/// Same quantity contracted from the joint outcome distribution instead.
PayoffCell mixed_payoff_from_probs(const MixedProfile& profile, double epsilon,
                                   const OutcomeMap& outcomes = prisoners_dilemma_outcomes());

/// Alice's payoff is affine in her flip probability; the sign of the
/// derivative picks the maximizing edge. lo == hi unless she is indifferent.
struct BestResponse {
  double derivative = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

BestResponse mixed_best_response(double epsilon, double q,
                                 const OutcomeMap& outcomes = prisoners_dilemma_outcomes());

/// How the swept profile reacts to the noise level: kPrescribed pins
/// p = q = 1 - epsilon; kDerivative plays the symmetric profile where the
/// payoff derivative vanishes, or the favored edge when it never does.
enum class ProfileRule { kPrescribed, kDerivative };

MixedProfile profile_for(ProfileRule rule, double epsilon,
                         const OutcomeMap& outcomes = prisoners_dilemma_outcomes());

struct SweepPoint {
  double epsilon = 0.0;
  double payoff_a = 0.0;
  double payoff_b = 0.0;
};

/// Evaluates the rule's profile on a uniform epsilon grid over [0, 1].
std::vector<SweepPoint> sweep_epsilon(ProfileRule rule, std::size_t grid,
                                      const OutcomeMap& outcomes = prisoners_dilemma_outcomes());

}  // namespace qgames
