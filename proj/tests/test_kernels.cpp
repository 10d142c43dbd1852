#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "qcorr/kernels.hpp"
#include "qcorr/pauli_two_qubit.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

std::vector<cplx> random_complex(std::size_t n, RngStream& rng) {
    std::vector<cplx> v(n);
    for (cplx& x : v) x = cplx{rng.next_gaussian(), rng.next_gaussian()};
    return v;
}

struct CorrInput {
    double T[9];
    double rA[3], rB[3];
    std::vector<double> axesA, axesB;
    int n_axes;
    std::size_t count;
};

CorrInput random_corr_input(int n_axes, std::size_t count, RngStream& rng) {
    CorrInput in;
    in.n_axes = n_axes;
    in.count = count;
    const pauli2::Bloch b = pauli2::bloch_of(random_bipartite(2, rng).rho.matrix());
    std::memcpy(in.T, b.T.data(), sizeof in.T);
    std::memcpy(in.rA, b.rA.data(), sizeof in.rA);
    std::memcpy(in.rB, b.rB.data(), sizeof in.rB);
    in.axesA.resize(static_cast<std::size_t>(n_axes) * 3 * count);
    in.axesB.resize(in.axesA.size());
    for (std::size_t i = 0; i < count; ++i)
        for (int k = 0; k < n_axes; ++k) {
            for (auto* side : {&in.axesA, &in.axesB}) {
                double v[3], norm = 0.0;
                for (double& c : v) {
                    c = rng.next_gaussian();
                    norm += c * c;
                }
                norm = std::sqrt(norm);
                for (int c = 0; c < 3; ++c)
                    (*side)[(k * 3 + c) * count + i] = v[c] / norm;
            }
        }
    return in;
}

}  // namespace

TEST_CASE("active backend is one of the registered implementations") {
    const std::string name = kernels::active().name;
    CHECK((name == "scalar" || name == "avx2"));
}

TEST_CASE("gram kernel matches a naive matrix computation") {
    RngStream rng(51, 0);
    for (int n : {2, 3, 4, 8}) {
        const std::vector<cplx> g = random_complex(static_cast<std::size_t>(n) * n, rng);
        std::vector<cplx> out(static_cast<std::size_t>(n) * n);
        kernels::scalar_ops().gram_unit_trace(g.data(), n, out.data());

        ComplexMatrix gm(n, n);
        gm.data() = g;
        ComplexMatrix want = gm * gm.dagger();
        want *= cplx{1.0 / want.trace().real(), 0.0};
        double maxdiff = 0.0;
        for (int i = 0; i < n * n; ++i) maxdiff = std::max(maxdiff, std::abs(out[i] - want.data()[i]));
        CHECK(maxdiff < 1e-12);
    }
}

TEST_CASE("conjugate-diag kernel matches a naive matrix computation") {
    RngStream rng(52, 0);
    for (int n : {2, 3, 4}) {
        const ComplexMatrix u = haar_unitary(n, rng);
        const std::vector<double> lam = simplex_uniform(rng, n);
        std::vector<cplx> out(static_cast<std::size_t>(n) * n);
        kernels::scalar_ops().conjugate_diag(u.data().data(), lam.data(), n, out.data());

        ComplexMatrix diag(n, n);
        for (int i = 0; i < n; ++i) diag(i, i) = lam[i];
        const ComplexMatrix want = u * diag * u.dagger();
        double maxdiff = 0.0;
        for (int i = 0; i < n * n; ++i) maxdiff = std::max(maxdiff, std::abs(out[i] - want.data()[i]));
        CHECK(maxdiff < 1e-12);
    }
}

TEST_CASE("corr-sum kernel agrees with the Pauli pair statistics") {
    RngStream rng(53, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const BipartiteState s = random_bipartite(2, rng);
        const pauli2::Bloch b = pauli2::bloch_of(s.rho.matrix());

        // Fixed frame x, y, z on both sides (count = 1).
        std::vector<double> axes(9, 0.0);
        axes[0 * 3 + 0] = 1.0;  // axis 0 = x
        axes[1 * 3 + 1] = 1.0;  // axis 1 = y
        axes[2 * 3 + 2] = 1.0;  // axis 2 = z
        double stat = 0.0;
        kernels::scalar_ops().corr_sum_batch(b.T.data(), b.rA.data(), b.rB.data(), 3, 1,
                                             axes.data(), axes.data(), &stat);
        const double want = pauli2::pauli_pair_stats(b, 0).abs_C +
                            pauli2::pauli_pair_stats(b, 1).abs_C +
                            pauli2::pauli_pair_stats(b, 2).abs_C;
        CHECK(stat == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
    const kernels::Ops* simd = kernels::avx2_ops();
    if (!simd) {
        MESSAGE("AVX2 unavailable on this host; dispatch falls back to scalar");
        return;
    }

    RngStream rng(54, 0);
    SUBCASE("gram_unit_trace") {
        for (int n : {2, 3, 4, 5, 8, 16}) {
            const std::vector<cplx> g = random_complex(static_cast<std::size_t>(n) * n, rng);
            std::vector<cplx> a(static_cast<std::size_t>(n) * n), b(a.size());
            kernels::scalar_ops().gram_unit_trace(g.data(), n, a.data());
            simd->gram_unit_trace(g.data(), n, b.data());
            CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0);
        }
    }
    SUBCASE("conjugate_diag") {
        for (int n : {2, 3, 4, 5, 8, 16}) {
            const ComplexMatrix u = haar_unitary(n, rng);
            const std::vector<double> lam = simplex_uniform(rng, n);
            std::vector<cplx> a(static_cast<std::size_t>(n) * n), b(a.size());
            kernels::scalar_ops().conjugate_diag(u.data().data(), lam.data(), n, a.data());
            simd->conjugate_diag(u.data().data(), lam.data(), n, b.data());
            CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0);
        }
    }
    SUBCASE("corr_sum_batch") {
        for (int n_axes : {2, 3}) {
            for (std::size_t count : {1ul, 3ul, 4ul, 7ul, 64ul, 129ul}) {
                const CorrInput in = random_corr_input(n_axes, count, rng);
                std::vector<double> a(count), b(count);
                kernels::scalar_ops().corr_sum_batch(in.T, in.rA, in.rB, n_axes, count,
                                                     in.axesA.data(), in.axesB.data(),
                                                     a.data());
                simd->corr_sum_batch(in.T, in.rA, in.rB, n_axes, count, in.axesA.data(),
                                     in.axesB.data(), b.data());
                CHECK(std::memcmp(a.data(), b.data(), count * sizeof(double)) == 0);
            }
        }
    }
}

TEST_CASE("bloch extraction matches operator expectations") {
    RngStream rng(55, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const BipartiteState s = random_bipartite(2, rng);
        const pauli2::Bloch b = pauli2::bloch_of(s.rho.matrix());
        const ComplexMatrix paulis[3] = {
            ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}),
            ComplexMatrix::from_rows({{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}),
            ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}),
        };
        const ComplexMatrix id = ComplexMatrix::identity(2);
        const auto tr = [&](const ComplexMatrix& op) {
            cplx t = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < 4; ++k) t += s.rho.matrix()(i, k) * op(k, i);
            return t.real();
        };
        for (int k = 0; k < 3; ++k) {
            CHECK(b.rA[k] == doctest::Approx(tr(tensor_product(paulis[k], id))).epsilon(1e-12));
            CHECK(b.rB[k] == doctest::Approx(tr(tensor_product(id, paulis[k]))).epsilon(1e-12));
            for (int l = 0; l < 3; ++l)
                CHECK(b.T[k * 3 + l] ==
                      doctest::Approx(tr(tensor_product(paulis[k], paulis[l]))).epsilon(1e-12));
        }
    }
}
