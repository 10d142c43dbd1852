#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcorr/bases.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

TEST_CASE("computational basis") {
    for (int d : {2, 3}) {
        const OrthonormalBasis b = computational_basis(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                CHECK(inner(b.vector(i), b.vector(j)) ==
                      (i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
    }
    CHECK_THROWS_AS(computational_basis(1), contract_error);
    CHECK_THROWS_AS(computational_basis(17), contract_error);
}

TEST_CASE("fourier basis for qubits is the |+>,|-> pair") {
    const OrthonormalBasis f = fourier_basis(2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(f.columns()(0, 0) - cplx{s, 0.0}) < 1e-12);
    CHECK(std::abs(f.columns()(1, 0) - cplx{s, 0.0}) < 1e-12);
    CHECK(std::abs(f.columns()(0, 1) - cplx{s, 0.0}) < 1e-12);
    CHECK(std::abs(f.columns()(1, 1) - cplx{-s, 0.0}) < 1e-12);
}

TEST_CASE("fourier and computational bases are unbiased for every supported d") {
    for (int d = 2; d <= 16; ++d) {
        const MubPair pair = MubPair::make(computational_basis(d), fourier_basis(d));
        CHECK(pair.overlap_c == doctest::Approx(1.0 / std::sqrt(d)).epsilon(1e-9));
    }
}

TEST_CASE("qubit Pauli MUB triple") {
    const MubSet set = qubit_pauli_mubs();
    REQUIRE(set.size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const ComplexMatrix ov = set.basis(i).columns().dagger() * set.basis(j).columns();
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    CHECK(std::norm(ov(a, b)) == doctest::Approx(0.5).epsilon(1e-9));
        }
    // +1 eigenvector of sigma_y listed first.
    const OrthonormalBasis y = set.basis(2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(y.columns()(0, 0) - cplx{s, 0.0}) < 1e-12);
    CHECK(std::abs(y.columns()(1, 0) - cplx{0.0, s}) < 1e-12);
}

TEST_CASE("prime-dimension MUB sets have d+1 pairwise unbiased members") {
    for (int d : {2, 3, 5, 7, 11, 13}) {
        const MubSet set = prime_d_mubs(d);
        CHECK(set.size() == d + 1);
        // MubSet::make already checked every pair; spot-check one overlap.
        const ComplexMatrix ov =
            set.basis(1).columns().dagger() * set.basis(set.size() - 1).columns();
        CHECK(std::norm(ov(0, 0)) == doctest::Approx(1.0 / d).epsilon(1e-9));
    }
    CHECK_THROWS_AS(prime_d_mubs(4), contract_error);
    CHECK_THROWS_AS(prime_d_mubs(6), contract_error);
    CHECK_THROWS_AS(prime_d_mubs(17), contract_error);
}

TEST_CASE("rotate_basis") {
    const OrthonormalBasis comp = computational_basis(3);
    CHECK(rotate_basis(comp, ComplexMatrix::identity(3))
              .columns()
              .max_abs_diff(comp.columns()) == 0.0);

    // Rotating the computational basis by the Fourier matrix gives the
    // Fourier basis.
    const OrthonormalBasis four = fourier_basis(3);
    CHECK(rotate_basis(comp, four.columns()).columns().max_abs_diff(four.columns()) < 1e-12);

    ComplexMatrix not_unitary = ComplexMatrix::identity(3);
    not_unitary(0, 0) = 2.0;
    CHECK_THROWS_AS(rotate_basis(comp, not_unitary), contract_error);
}

TEST_CASE("complementarity survives joint rotations") {
    RngStream rng(21, 0);
    for (int d : {2, 3, 4}) {
        for (int trial = 0; trial < 10; ++trial) {
            const ComplexMatrix u = haar_unitary(d, rng);
            const OrthonormalBasis a = rotate_basis(computational_basis(d), u);
            const OrthonormalBasis c = rotate_basis(fourier_basis(d), u);
            const MubPair pair = MubPair::make(a, c);
            CHECK(pair.overlap_c == doctest::Approx(1.0 / std::sqrt(d)).epsilon(1e-9));
        }
    }
}

TEST_CASE("linear observables") {
    const Observable a = linear_observable(computational_basis(2));
    REQUIRE(a.eigenvalues.size() == 2);
    CHECK(a.eigenvalues[0] == 0.0);
    CHECK(a.eigenvalues[1] == 1.0);
    // A = 0*|0><0| + 1*|1><1| = |1><1|.
    const ComplexMatrix m = a.matrix();
    CHECK(m.max_abs_diff(ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}})) < 1e-12);

    const Observable b = linear_observable(computational_basis(3));
    CHECK(b.eigenvalues == std::vector<double>{0.0, 1.0, 2.0});

    CHECK_THROWS_AS(Observable::make(computational_basis(2), {1.0, 1.0}), contract_error);
}

TEST_CASE("basis constructor rejects non-orthonormal columns") {
    ComplexMatrix bad(2, 2);
    bad(0, 0) = 1.0;
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(OrthonormalBasis::from_columns(bad), contract_error);
}

TEST_CASE("basis phase convention is applied") {
    // A column entering with a global phase comes out with its first
    // nonzero component real non-negative.
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix cols(2, 2);
    cols(0, 0) = cplx{0.0, s};
    cols(1, 0) = cplx{0.0, s};
    cols(0, 1) = cplx{0.0, s};
    cols(1, 1) = cplx{0.0, -s};
    const OrthonormalBasis b = OrthonormalBasis::from_columns(cols);
    CHECK(b.columns()(0, 0).real() == doctest::Approx(s).epsilon(1e-12));
    CHECK(b.columns()(0, 0).imag() == doctest::Approx(0.0).epsilon(1e-12));
}
