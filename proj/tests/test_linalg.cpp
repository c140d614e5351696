#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "qgames/complex_matrix.hpp"
#include "qgames/errors.hpp"
#include "qgames/quantum.hpp"

using namespace qgames;

TEST_SUITE("linalg") {
  TEST_CASE("matrix product matches a hand-expanded 2x2 example") {
    const CMatrix a({{Complex{1, 1}, Complex{2, 0}}, {Complex{0, -1}, Complex{3, 0}}});
    const CMatrix b({{Complex{0, 1}, Complex{1, 0}}, {Complex{1, 0}, Complex{0, 0}}});
    const CMatrix c = a * b;
    CHECK(std::abs(c(0, 0) - Complex{1, 1}) < 1e-15);   // (1+i)i + 2
    CHECK(std::abs(c(0, 1) - Complex{1, 1}) < 1e-15);   // (1+i)
    CHECK(std::abs(c(1, 0) - Complex{4, 0}) < 1e-15);   // (-i)i + 3
    CHECK(std::abs(c(1, 1) - Complex{0, -1}) < 1e-15);  // -i
  }

  TEST_CASE("matrix product dimension mismatch throws") {
    CHECK_THROWS_AS(CMatrix(2, 3) * CMatrix(2, 2), ValidationError);
  }

  TEST_CASE("ragged initializer rows are rejected") {
    CHECK_THROWS_AS(CMatrix({{1, 2}, {1}}), ValidationError);
  }

  TEST_CASE("adjoint conjugates and transposes") {
    const CMatrix a({{Complex{1, 2}, Complex{3, 4}}, {Complex{5, 6}, Complex{7, 8}}});
    const CMatrix ad = a.adjoint();
    CHECK(ad(0, 0) == Complex{1, -2});
    CHECK(ad(0, 1) == Complex{5, -6});
    CHECK(ad(1, 0) == Complex{3, -4});
    CHECK(ad(1, 1) == Complex{7, -8});
    CHECK(max_abs_diff(ad.adjoint(), a) == 0.0);
  }

  TEST_CASE("kron agrees with the index-block definition") {
    const CMatrix a({{Complex{1, 1}, Complex{0, 2}}, {Complex{3, 0}, Complex{0, -1}}});
    const CMatrix b({{Complex{2, 0}, Complex{0, 1}, Complex{1, 1}},
                     {Complex{0, 0}, Complex{1, -1}, Complex{4, 0}}});
    const CMatrix k = kron(a, b);
    REQUIRE(k.rows() == 4);
    REQUIRE(k.cols() == 6);
    for (std::size_t ia = 0; ia < 2; ++ia)
      for (std::size_t ja = 0; ja < 2; ++ja)
        for (std::size_t ib = 0; ib < 2; ++ib)
          for (std::size_t jb = 0; jb < 3; ++jb)
            CHECK(std::abs(k(ia * 2 + ib, ja * 3 + jb) - a(ia, ja) * b(ib, jb)) == 0.0);
  }

  TEST_CASE("state vector enforces normalization on construction") {
    CHECK_THROWS_AS(StateVector({Complex{1, 0}, Complex{1, 0}}), NumericalError);
    CHECK_THROWS_AS(StateVector(std::vector<Complex>{}), ValidationError);
    const StateVector ok = StateVector::normalized({Complex{1, 0}, Complex{1, 0}});
    CHECK(std::abs(ok.amp(0).real() - 1.0 / std::sqrt(2.0)) < 1e-15);
  }

  TEST_CASE("normalized rejects the zero vector") {
    CHECK_THROWS_AS(StateVector::normalized({Complex{0, 0}, Complex{0, 0}}), ValidationError);
  }

  TEST_CASE("basis_state puts the single unit amplitude where asked") {
    const StateVector e2 = StateVector::basis_state(4, 2);
    CHECK(e2.amp(2) == Complex{1, 0});
    CHECK(e2.amp(0) == Complex{0, 0});
    CHECK_THROWS_AS(StateVector::basis_state(4, 4), ValidationError);
  }

  TEST_CASE("unitary construction rejects non-unitary and non-square input") {
    CHECK_THROWS_AS(UnitaryOperator(CMatrix({{1, 0}, {0, 0.9}})), ValidationError);
    CHECK_THROWS_AS(UnitaryOperator(CMatrix(2, 3)), ValidationError);
    CHECK_NOTHROW(UnitaryOperator(CMatrix({{0, 1}, {1, 0}})));
  }

  TEST_CASE("inverse is the adjoint and multiplies back to identity") {
    std::mt19937_64 rng(11);
    const UnitaryOperator u = random_unitary(4, rng);
    const UnitaryOperator inv = u.inverse();
    CHECK(deviation_from_identity((u * inv).matrix()) < 1e-12);
    CHECK(deviation_from_identity((inv * u).matrix()) < 1e-12);
  }

  TEST_CASE("density matrix validates hermiticity, trace, and diagonal sign") {
    CHECK_THROWS_AS(DensityMatrix(CMatrix({{Complex{0.5, 0}, Complex{0, 1}},
                                           {Complex{0, 1}, Complex{0.5, 0}}})),
                    ValidationError);
    CHECK_THROWS_AS(DensityMatrix(CMatrix({{0.5, 0}, {0, 0.4}})), NumericalError);
    CHECK_THROWS_AS(DensityMatrix(CMatrix({{1.5, 0}, {0, -0.5}})), ValidationError);
    CHECK_NOTHROW(DensityMatrix(CMatrix({{0.5, 0.5}, {0.5, 0.5}})));
  }

  TEST_CASE("maximally mixed state is uniform on the diagonal") {
    const DensityMatrix rho = DensityMatrix::maximally_mixed(4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(rho.matrix()(i, i) == Complex{0.25, 0});
    CHECK(std::abs(rho.matrix().trace() - Complex{1, 0}) < 1e-15);
  }

  TEST_CASE("per-subsystem labels use bit strings only for powers of two") {
    CHECK(subsystem_labels(2) == std::vector<std::string>{"0", "1"});
    CHECK(subsystem_labels(4) == std::vector<std::string>{"00", "01", "10", "11"});
    CHECK(subsystem_labels(3) == std::vector<std::string>{"0", "1", "2"});
  }

  TEST_CASE("joint labels follow index = a * dim_b + b") {
    const auto l22 = default_basis_labels(2, 2);
    CHECK(l22 == std::vector<std::string>{"00", "01", "10", "11"});
    const auto l23 = default_basis_labels(2, 3);
    CHECK(l23 == std::vector<std::string>{"0,0", "0,1", "0,2", "1,0", "1,1", "1,2"});
  }

  TEST_CASE("measurement basis rejects duplicate or empty labels") {
    CHECK_THROWS_AS(MeasurementBasis({"00", "00"}), ValidationError);
    CHECK_THROWS_AS(MeasurementBasis({"00", ""}), ValidationError);
    const MeasurementBasis b = MeasurementBasis::computational(2, 2);
    CHECK(b.index_of("10") == 2);
    CHECK_THROWS_AS(b.index_of("20"), ValidationError);
  }

  TEST_CASE("tensor of flip and identity permutes the first subsystem index") {
    const UnitaryOperator fx = tensor(testfx::pauli_x(), UnitaryOperator::identity(2));
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        const StateVector out = apply(fx, StateVector::basis_state(4, 2 * a + b));
        CHECK(std::abs(out.amp(2 * (1 - a) + b) - Complex{1, 0}) < 1e-15);
      }
    }
  }

  TEST_CASE("tensor rejects joint dimensions beyond the cap") {
    std::mt19937_64 rng(3);
    const UnitaryOperator u = random_unitary(2, rng);
    CHECK_THROWS_AS(tensor(u, u, 3), ValidationError);
  }

  TEST_CASE("measurement probabilities of a two-term state") {
    const auto pr = measure_probs(testfx::entangled_3_5(), MeasurementBasis::computational(2, 2));
    REQUIRE(pr.size() == 4);
    CHECK(pr[0] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(pr[1] == 0.0);
    CHECK(pr[2] == 0.0);
    CHECK(pr[3] == doctest::Approx(0.4).epsilon(1e-14));
  }

  TEST_CASE("a basis change redistributes probabilities to the new eigenstates") {
    const MeasurementBasis rotated(default_basis_labels(2, 2),
                                   tensor(testfx::hadamard(), testfx::hadamard()));
    const auto pr = measure_probs(StateVector::basis_state(4, 0), rotated);
    for (double p : pr) CHECK(p == doctest::Approx(0.25).epsilon(1e-13));
  }

  TEST_CASE("basis change dimension must match the label count") {
    CHECK_THROWS_AS(MeasurementBasis({"0", "1"}, testfx::maximal_entangler()), ValidationError);
  }

  TEST_CASE("density of a pure state has matching diagonal and coherences") {
    const DensityMatrix rho = density_from_pure(testfx::entangled_3_5());
    CHECK(std::abs(rho.matrix()(0, 0) - Complex{0.6, 0}) < 1e-15);
    CHECK(std::abs(rho.matrix()(3, 3) - Complex{0.4, 0}) < 1e-15);
    CHECK(std::abs(rho.matrix()(0, 3) - Complex{std::sqrt(0.24), 0}) < 1e-15);
    CHECK(std::abs(rho.matrix()(1, 2)) == 0.0);
  }

  TEST_CASE("mixed-state probabilities agree with the pure-state path") {
    std::mt19937_64 rng(17);
    const MeasurementBasis basis(default_basis_labels(2, 2), random_unitary(4, rng));
    const StateVector psi = random_state(4, rng);
    const auto pure = measure_probs(psi, basis);
    const auto mixed = measure_probs_mixed(density_from_pure(psi), basis);
    REQUIRE(pure.size() == mixed.size());
    for (std::size_t i = 0; i < pure.size(); ++i)
      CHECK(pure[i] == doctest::Approx(mixed[i]).epsilon(1e-11));
  }

  TEST_CASE("evolve conjugates the density matrix") {
    std::mt19937_64 rng(23);
    const UnitaryOperator u = random_unitary(4, rng);
    const StateVector psi = random_state(4, rng);
    const DensityMatrix lhs = evolve(u, density_from_pure(psi));
    const DensityMatrix rhs = density_from_pure(apply(u, psi));
    CHECK(max_abs_diff(lhs.matrix(), rhs.matrix()) < 1e-12);
  }

  TEST_CASE("fidelity ignores global phase") {
    const StateVector a = testfx::entangled_3_5();
    std::vector<Complex> rot;
    for (std::size_t i = 0; i < 4; ++i) rot.push_back(a.amp(i) * Complex{0, 1});
    const StateVector b(std::move(rot));
    CHECK(fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(StateVector::basis_state(4, 0), StateVector::basis_state(4, 3)) == 0.0);
  }
}
