#include <complex>

#include "kernels_detail.hpp"
#include "qcorr/kernels.hpp"

// Reference kernels. The op order in kernels_detail.hpp is the contract the
// AVX2 variants reproduce lane-for-lane; see test_kernels.

namespace qcorr::kernels {

namespace {

using cd = std::complex<double>;
using detail::acc_mul_conj;

void gram_unit_trace_scalar(const cd* g, int n, cd* out) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double re = 0.0, im = 0.0;
            for (int k = 0; k < n; ++k) {
                const cd& gi = g[i * n + k];
                const cd& gj = g[j * n + k];
                acc_mul_conj(gi.real(), gi.imag(), gj.real(), gj.imag(), re, im);
            }
            out[i * n + j] = cd{re, im};
        }
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += out[i * n + i].real();
    const double scale = 1.0 / tr;
    for (int e = 0; e < n * n; ++e) out[e] = cd{out[e].real() * scale, out[e].imag() * scale};
}

void conjugate_diag_scalar(const cd* u, const double* lam, int n, cd* out) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double re = 0.0, im = 0.0;
            for (int k = 0; k < n; ++k) {
                const cd& ui = u[i * n + k];
                const cd& uj = u[j * n + k];
                const double a = lam[k] * ui.real();
                const double b = lam[k] * ui.imag();
                acc_mul_conj(a, b, uj.real(), uj.imag(), re, im);
            }
            out[i * n + j] = cd{re, im};
        }
}

void corr_sum_batch_scalar(const double* T, const double* rA, const double* rB, int n_axes,
                           std::size_t count, const double* axesA, const double* axesB,
                           double* out) {
    for (std::size_t i = 0; i < count; ++i)
        out[i] = detail::corr_sum_one(T, rA, rB, n_axes, count, axesA, axesB, i);
}

const Ops kScalarOps{"scalar", gram_unit_trace_scalar, conjugate_diag_scalar,
                     corr_sum_batch_scalar};

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

}  // namespace qcorr::kernels
