#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgames/quantum.hpp"

namespace qgames {

/// Payoff values attached to each measurement outcome: values_a[i] pays
/// Alice, values_b[i] pays Bob when outcome i fires.
struct OutcomeMap {
  std::vector<double> values_a;
  std::vector<double> values_b;
};

enum class OpScope { kLocalA, kLocalB, kJoint };

struct NamedOperator {
  std::string name;
  UnitaryOperator op;
  OpScope scope;
};

enum class Player { kA, kB };

struct PayoffCell {
  double a = 0.0;
  double b = 0.0;
};

/// n x m table of expected payoff pairs, rows indexed by Alice's strategy.
class PayoffMatrix {
 public:
  PayoffMatrix(std::vector<std::string> row_names, std::vector<std::string> col_names,
               std::vector<PayoffCell> cells);

  std::size_t rows() const { return row_names_.size(); }
  std::size_t cols() const { return col_names_.size(); }
  const PayoffCell& at(std::size_t j, std::size_t k) const;
  const std::vector<std::string>& row_names() const { return row_names_; }
  const std::vector<std::string>& col_names() const { return col_names_; }

 private:
  std::vector<std::string> row_names_;
  std::vector<std::string> col_names_;
  std::vector<PayoffCell> cells_;
};

/// Complete description of one playable game: shared input state, each
/// player's finite strategy set, the measurement, the outcome payoffs, and an
/// optional entangling operator E applied before / undone after the moves.
class GameSpec {
 public:
  GameSpec(std::size_t dim_a, std::size_t dim_b, StateVector input,
           std::vector<NamedOperator> alice, std::vector<NamedOperator> bob,
           MeasurementBasis basis, OutcomeMap outcomes,
           std::optional<UnitaryOperator> entangler = std::nullopt);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t joint_dim() const { return dim_a_ * dim_b_; }
  const StateVector& input() const { return input_; }
  const std::vector<NamedOperator>& alice() const { return alice_; }
  const std::vector<NamedOperator>& bob() const { return bob_; }
  const MeasurementBasis& basis() const { return basis_; }
  const OutcomeMap& outcomes() const { return outcomes_; }
  const std::optional<UnitaryOperator>& entangler() const { return entangler_; }

  /// Same game played from a different input state.
  GameSpec with_input_state(StateVector input) const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  StateVector input_;
  std::vector<NamedOperator> alice_;
  std::vector<NamedOperator> bob_;
  MeasurementBasis basis_;
  OutcomeMap outcomes_;
  std::optional<UnitaryOperator> entangler_;
};

/// Lifts a player's named operator to the joint space: local ops are padded
/// with identity on the other side, joint ops pass through.
UnitaryOperator lift_to_joint(const NamedOperator& named, std::size_t dim_a, std::size_t dim_b);

/// State reaching the detector when Alice plays strategy j and Bob plays k.
/// With an entangler E the moves act in the rotated frame:
/// E†(B_k A_j)E |psi_in>.
StateVector output_state(const GameSpec& spec, std::size_t j, std::size_t k);

/// Expected payoff for every pure strategy pair.
PayoffMatrix expected_payoffs(const GameSpec& spec);

/// Same contraction but from a (possibly mixed) input density matrix.
PayoffMatrix expected_payoffs_mixed_state(const GameSpec& spec, const DensityMatrix& rho);

/// Rewrites each strategy as it acts inside the entangler frame:
/// op -> E† op E.
std::vector<NamedOperator> ewl_conjugate(const UnitaryOperator& entangler,
                                         const std::vector<NamedOperator>& ops);

/// Interpolates between the identity channel (lambda = 0) and full loss of
/// off-diagonal terms in the measurement basis (lambda = 1).
class DephasingChannel {
 public:
  explicit DephasingChannel(double lambda);
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

/// Scales every off-diagonal element of rho, expressed in the measurement
/// eigenbasis, by (1 - lambda).
DensityMatrix dephase(const DensityMatrix& rho, const DephasingChannel& channel,
                      const MeasurementBasis& basis);

/// The standard 2-bit dilemma weights on outcomes 00, 01, 10, 11:
/// Alice (3, 0, 5, 1), Bob (3, 5, 0, 1).
OutcomeMap prisoners_dilemma_outcomes();

}  // namespace qgames
