#include "qgames/engine.hpp"

#include <cmath>
#include <utility>

#include "qgames/errors.hpp"

namespace qgames {

PayoffMatrix::PayoffMatrix(std::vector<std::string> row_names, std::vector<std::string> col_names,
                           std::vector<PayoffCell> cells)
    : row_names_(std::move(row_names)), col_names_(std::move(col_names)), cells_(std::move(cells)) {
  if (row_names_.empty() || col_names_.empty())
    throw ValidationError("payoff matrix: empty strategy set");
  if (cells_.size() != row_names_.size() * col_names_.size())
    throw ValidationError("payoff matrix: cell count does not match dimensions");
  for (const auto& c : cells_) {
    if (!std::isfinite(c.a) || !std::isfinite(c.b))
      throw ValidationError("payoff matrix: non-finite payoff");
  }
}

const PayoffCell& PayoffMatrix::at(std::size_t j, std::size_t k) const {
  if (j >= rows() || k >= cols()) throw ValidationError("payoff matrix: index out of range");
  return cells_[j * cols() + k];
}

GameSpec::GameSpec(std::size_t dim_a, std::size_t dim_b, StateVector input,
                   std::vector<NamedOperator> alice, std::vector<NamedOperator> bob,
                   MeasurementBasis basis, OutcomeMap outcomes,
                   std::optional<UnitaryOperator> entangler)
    : dim_a_(dim_a),
      dim_b_(dim_b),
      input_(std::move(input)),
      alice_(std::move(alice)),
      bob_(std::move(bob)),
      basis_(std::move(basis)),
      outcomes_(std::move(outcomes)),
      entangler_(std::move(entangler)) {
  if (dim_a_ < 2 || dim_b_ < 2) throw ValidationError("game: subsystem dimension must be >= 2");
  const std::size_t joint = dim_a_ * dim_b_;
  if (joint > kMaxDim) throw ValidationError("game: joint dimension exceeds limit");
  if (input_.dim() != joint) throw ValidationError("game: input state dimension mismatch");
  if (alice_.empty() || bob_.empty()) throw ValidationError("game: empty strategy set");
  for (const auto& named : alice_) {
    if (named.scope == OpScope::kLocalB)
      throw ValidationError("game: Alice operator '" + named.name + "' scoped to Bob");
    const std::size_t want = named.scope == OpScope::kJoint ? joint : dim_a_;
    if (named.op.dim() != want)
      throw ValidationError("game: Alice operator '" + named.name + "' has wrong dimension");
  }
  for (const auto& named : bob_) {
    if (named.scope == OpScope::kLocalA)
      throw ValidationError("game: Bob operator '" + named.name + "' scoped to Alice");
    const std::size_t want = named.scope == OpScope::kJoint ? joint : dim_b_;
    if (named.op.dim() != want)
      throw ValidationError("game: Bob operator '" + named.name + "' has wrong dimension");
  }
  if (basis_.dim() != joint) throw ValidationError("game: measurement dimension mismatch");
  if (outcomes_.values_a.size() != joint || outcomes_.values_b.size() != joint)
    throw ValidationError("game: outcome map must assign both payoffs to every outcome");
  for (double v : outcomes_.values_a)
    if (!std::isfinite(v)) throw ValidationError("game: non-finite payoff value");
  for (double v : outcomes_.values_b)
    if (!std::isfinite(v)) throw ValidationError("game: non-finite payoff value");
  if (entangler_ && entangler_->dim() != joint)
    throw ValidationError("game: entangler dimension mismatch");
}

GameSpec GameSpec::with_input_state(StateVector input) const {
  GameSpec copy = *this;
  if (input.dim() != copy.input_.dim())
    throw ValidationError("game: replacement input state dimension mismatch");
  copy.input_ = std::move(input);
  return copy;
}

UnitaryOperator lift_to_joint(const NamedOperator& named, std::size_t dim_a, std::size_t dim_b) {
  switch (named.scope) {
    case OpScope::kLocalA:
      return tensor(named.op, UnitaryOperator::identity(dim_b));
    case OpScope::kLocalB:
      return tensor(UnitaryOperator::identity(dim_a), named.op);
    case OpScope::kJoint:
      return named.op;
  }
  throw ValidationError("game: unknown operator scope");
}

namespace {

/// E†(B_k A_j)E as a single joint operator, E omitted when absent.
UnitaryOperator round_operator(const GameSpec& spec, std::size_t j, std::size_t k) {
  if (j >= spec.alice().size() || k >= spec.bob().size())
    throw ValidationError("game: strategy index out of range");
  const UnitaryOperator a = lift_to_joint(spec.alice()[j], spec.dim_a(), spec.dim_b());
  const UnitaryOperator b = lift_to_joint(spec.bob()[k], spec.dim_a(), spec.dim_b());
  UnitaryOperator moves = b * a;
  if (spec.entangler()) moves = spec.entangler()->inverse() * (moves * *spec.entangler());
  return moves;
}

std::vector<std::string> strategy_names(const std::vector<NamedOperator>& ops) {
  std::vector<std::string> names;
  names.reserve(ops.size());
  for (const auto& o : ops) names.push_back(o.name);
  return names;
}

PayoffCell contract(const std::vector<double>& probs, const OutcomeMap& outcomes) {
  PayoffCell cell;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cell.a += probs[i] * outcomes.values_a[i];
    cell.b += probs[i] * outcomes.values_b[i];
  }
  return cell;
}

}  // namespace

StateVector output_state(const GameSpec& spec, std::size_t j, std::size_t k) {
  return apply(round_operator(spec, j, k), spec.input());
}

PayoffMatrix expected_payoffs(const GameSpec& spec) {
  std::vector<PayoffCell> cells;
  cells.reserve(spec.alice().size() * spec.bob().size());
  for (std::size_t j = 0; j < spec.alice().size(); ++j) {
    for (std::size_t k = 0; k < spec.bob().size(); ++k) {
      const auto probs = measure_probs(output_state(spec, j, k), spec.basis());
      cells.push_back(contract(probs, spec.outcomes()));
    }
  }
  return PayoffMatrix(strategy_names(spec.alice()), strategy_names(spec.bob()), std::move(cells));
}

PayoffMatrix expected_payoffs_mixed_state(const GameSpec& spec, const DensityMatrix& rho) {
  if (rho.dim() != spec.joint_dim())
    throw ValidationError("game: density matrix dimension mismatch");
  std::vector<PayoffCell> cells;
  cells.reserve(spec.alice().size() * spec.bob().size());
  for (std::size_t j = 0; j < spec.alice().size(); ++j) {
    for (std::size_t k = 0; k < spec.bob().size(); ++k) {
      const DensityMatrix out = evolve(round_operator(spec, j, k), rho);
      const auto probs = measure_probs_mixed(out, spec.basis());
      cells.push_back(contract(probs, spec.outcomes()));
    }
  }
  return PayoffMatrix(strategy_names(spec.alice()), strategy_names(spec.bob()), std::move(cells));
}

std::vector<NamedOperator> ewl_conjugate(const UnitaryOperator& entangler,
                                         const std::vector<NamedOperator>& ops) {
  std::vector<NamedOperator> out;
  out.reserve(ops.size());
  for (const auto& named : ops) {
    if (named.scope != OpScope::kJoint)
      throw ValidationError("conjugation: operator '" + named.name +
                            "' must already act on the joint space");
    if (named.op.dim() != entangler.dim())
      throw ValidationError("conjugation: dimension mismatch for '" + named.name + "'");
    out.push_back({named.name, entangler.inverse() * (named.op * entangler), OpScope::kJoint});
  }
  return out;
}

DephasingChannel::DephasingChannel(double lambda) : lambda_(lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0 || lambda > 1.0)
    throw ValidationError("dephasing: strength must lie in [0, 1]");
}

DensityMatrix dephase(const DensityMatrix& rho, const DephasingChannel& channel,
                      const MeasurementBasis& basis) {
  if (rho.dim() != basis.dim()) throw ValidationError("dephasing: dimension mismatch");
  const double keep = 1.0 - channel.lambda();
  CMatrix m = rho.matrix();
  if (basis.basis_change()) {
    const CMatrix& b = basis.basis_change()->matrix();
    CMatrix rotated = b.adjoint() * (m * b);
    for (std::size_t i = 0; i < rotated.rows(); ++i)
      for (std::size_t j = 0; j < rotated.cols(); ++j)
        if (i != j) rotated(i, j) *= keep;
    return DensityMatrix(b * (rotated * b.adjoint()));
  }
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) m(i, j) *= keep;
  return DensityMatrix(std::move(m));
}

OutcomeMap prisoners_dilemma_outcomes() {
  return OutcomeMap{{3.0, 0.0, 5.0, 1.0}, {3.0, 5.0, 0.0, 1.0}};
}

}  // namespace qgames
