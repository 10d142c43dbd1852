// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma in its own TU; only
// reached through the dispatch table after a cpuid check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <complex>

#include "kernels_detail.hpp"
#include "qcorr/kernels.hpp"

namespace qcorr::kernels {

namespace {

using cd = std::complex<double>;
using detail::acc_mul_conj;

// Rows j and j+1 of the conjugated factor processed as one vector
// [c_j, d_j, c_j+1, d_j+1]; the two fmadds per k mirror acc_mul_conj.
inline __m256d acc_pair(__m256d acc, double a, double b, const cd* rowj, const cd* rowj1) {
    const __m128d lo = _mm_loadu_pd(reinterpret_cast<const double*>(rowj));
    const __m128d hi = _mm_loadu_pd(reinterpret_cast<const double*>(rowj1));
    const __m256d h = _mm256_set_m128d(hi, lo);
    const __m256d hs = _mm256_permute_pd(h, 0b0101);
    const __m256d av = _mm256_setr_pd(a, -a, a, -a);
    const __m256d bv = _mm256_set1_pd(b);
    acc = _mm256_fmadd_pd(av, h, acc);
    return _mm256_fmadd_pd(bv, hs, acc);
}

void gram_unit_trace_avx2(const cd* g, int n, cd* out) {
    for (int i = 0; i < n; ++i) {
        int j = 0;
        for (; j + 1 < n; j += 2) {
            __m256d acc = _mm256_setzero_pd();
            for (int k = 0; k < n; ++k) {
                const cd& gi = g[i * n + k];
                acc = acc_pair(acc, gi.real(), gi.imag(), &g[j * n + k], &g[(j + 1) * n + k]);
            }
            _mm256_storeu_pd(reinterpret_cast<double*>(&out[i * n + j]), acc);
        }
        for (; j < n; ++j) {
            double re = 0.0, im = 0.0;
            for (int k = 0; k < n; ++k) {
                const cd& gi = g[i * n + k];
                const cd& gj = g[j * n + k];
                acc_mul_conj(gi.real(), gi.imag(), gj.real(), gj.imag(), re, im);
            }
            out[i * n + j] = cd{re, im};
        }
    }
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += out[i * n + i].real();
    const double scale = 1.0 / tr;
    for (int e = 0; e < n * n; ++e) out[e] = cd{out[e].real() * scale, out[e].imag() * scale};
}

void conjugate_diag_avx2(const cd* u, const double* lam, int n, cd* out) {
    for (int i = 0; i < n; ++i) {
        int j = 0;
        for (; j + 1 < n; j += 2) {
            __m256d acc = _mm256_setzero_pd();
            for (int k = 0; k < n; ++k) {
                const cd& ui = u[i * n + k];
                const double a = lam[k] * ui.real();
                const double b = lam[k] * ui.imag();
                acc = acc_pair(acc, a, b, &u[j * n + k], &u[(j + 1) * n + k]);
            }
            _mm256_storeu_pd(reinterpret_cast<double*>(&out[i * n + j]), acc);
        }
        for (; j < n; ++j) {
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
}

void corr_sum_batch_avx2(const double* T, const double* rA, const double* rB, int n_axes,
                         std::size_t count, const double* axesA, const double* axesB,
                         double* out) {
    const __m256d kVarEps = _mm256_set1_pd(1e-12);
    const __m256d kOne = _mm256_set1_pd(1.0);
    const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));

    const __m256d rA0 = _mm256_set1_pd(rA[0]), rA1 = _mm256_set1_pd(rA[1]),
                  rA2 = _mm256_set1_pd(rA[2]);
    const __m256d rB0 = _mm256_set1_pd(rB[0]), rB1 = _mm256_set1_pd(rB[1]),
                  rB2 = _mm256_set1_pd(rB[2]);
    __m256d Tv[9];
    for (int e = 0; e < 9; ++e) Tv[e] = _mm256_set1_pd(T[e]);

    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d stat = _mm256_setzero_pd();
        for (int k = 0; k < n_axes; ++k) {
            const __m256d u0 = _mm256_loadu_pd(&axesA[(k * 3 + 0) * count + i]);
            const __m256d u1 = _mm256_loadu_pd(&axesA[(k * 3 + 1) * count + i]);
            const __m256d u2 = _mm256_loadu_pd(&axesA[(k * 3 + 2) * count + i]);
            const __m256d v0 = _mm256_loadu_pd(&axesB[(k * 3 + 0) * count + i]);
            const __m256d v1 = _mm256_loadu_pd(&axesB[(k * 3 + 1) * count + i]);
            const __m256d v2 = _mm256_loadu_pd(&axesB[(k * 3 + 2) * count + i]);

            __m256d tu = _mm256_mul_pd(u0, rA0);
            tu = _mm256_fmadd_pd(u1, rA1, tu);
            tu = _mm256_fmadd_pd(u2, rA2, tu);
            __m256d tv = _mm256_mul_pd(v0, rB0);
            tv = _mm256_fmadd_pd(v1, rB1, tv);
            tv = _mm256_fmadd_pd(v2, rB2, tv);

            __m256d z0 = _mm256_mul_pd(Tv[0], v0);
            z0 = _mm256_fmadd_pd(Tv[1], v1, z0);
            z0 = _mm256_fmadd_pd(Tv[2], v2, z0);
            __m256d z1 = _mm256_mul_pd(Tv[3], v0);
            z1 = _mm256_fmadd_pd(Tv[4], v1, z1);
            z1 = _mm256_fmadd_pd(Tv[5], v2, z1);
            __m256d z2 = _mm256_mul_pd(Tv[6], v0);
            z2 = _mm256_fmadd_pd(Tv[7], v1, z2);
            z2 = _mm256_fmadd_pd(Tv[8], v2, z2);

            __m256d utv = _mm256_mul_pd(u0, z0);
            utv = _mm256_fmadd_pd(u1, z1, utv);
            utv = _mm256_fmadd_pd(u2, z2, utv);

            const __m256d cov = _mm256_fnmadd_pd(tu, tv, utv);
            const __m256d vA = _mm256_fnmadd_pd(tu, tu, kOne);
            const __m256d vB = _mm256_fnmadd_pd(tv, tv, kOne);
            const __m256d den = _mm256_sqrt_pd(_mm256_mul_pd(vA, vB));
            __m256d term = _mm256_div_pd(_mm256_and_pd(cov, kAbsMask), den);
            const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(vA, kVarEps, _CMP_GT_OQ),
                                             _mm256_cmp_pd(vB, kVarEps, _CMP_GT_OQ));
            term = _mm256_and_pd(term, ok);
            stat = _mm256_add_pd(stat, term);
        }
        _mm256_storeu_pd(&out[i], stat);
    }
    for (; i < count; ++i)
        out[i] = detail::corr_sum_one(T, rA, rB, n_axes, count, axesA, axesB, i);
}

const Ops kAvx2Ops{"avx2", gram_unit_trace_avx2, conjugate_diag_avx2, corr_sum_batch_avx2};

}  // namespace

const Ops* avx2_ops_impl() { return &kAvx2Ops; }

}  // namespace qcorr::kernels

#endif  // x86_64
