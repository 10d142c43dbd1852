#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

// Shared between the scalar kernels and the scalar tails of the SIMD
// variants. fma order is the bit-exactness contract; do not re-associate.

namespace qcorr::kernels::detail {

inline void acc_mul_conj(double a, double b, double c, double d, double& re, double& im) {
    re = std::fma(a, c, re);
    re = std::fma(b, d, re);
    im = std::fma(-a, d, im);
    im = std::fma(b, c, im);
}

inline double corr_sum_one(const double* T, const double* rA, const double* rB, int n_axes,
                           std::size_t count, const double* axesA, const double* axesB,
                           std::size_t i) {
    constexpr double kVarEps = 1e-12;
    double stat = 0.0;
    for (int k = 0; k < n_axes; ++k) {
        const double u0 = axesA[(k * 3 + 0) * count + i];
        const double u1 = axesA[(k * 3 + 1) * count + i];
        const double u2 = axesA[(k * 3 + 2) * count + i];
        const double v0 = axesB[(k * 3 + 0) * count + i];
        const double v1 = axesB[(k * 3 + 1) * count + i];
        const double v2 = axesB[(k * 3 + 2) * count + i];

        double tu = u0 * rA[0];
        tu = std::fma(u1, rA[1], tu);
        tu = std::fma(u2, rA[2], tu);
        double tv = v0 * rB[0];
        tv = std::fma(v1, rB[1], tv);
        tv = std::fma(v2, rB[2], tv);

        double z0 = T[0] * v0;
        z0 = std::fma(T[1], v1, z0);
        z0 = std::fma(T[2], v2, z0);
        double z1 = T[3] * v0;
        z1 = std::fma(T[4], v1, z1);
        z1 = std::fma(T[5], v2, z1);
        double z2 = T[6] * v0;
        z2 = std::fma(T[7], v1, z2);
        z2 = std::fma(T[8], v2, z2);

        double utv = u0 * z0;
        utv = std::fma(u1, z1, utv);
        utv = std::fma(u2, z2, utv);

        const double cov = std::fma(-tu, tv, utv);
        const double vA = std::fma(-tu, tu, 1.0);
        const double vB = std::fma(-tv, tv, 1.0);
        if (vA > kVarEps && vB > kVarEps) stat += std::fabs(cov) / std::sqrt(vA * vB);
    }
    return stat;
}

}  // namespace qcorr::kernels::detail
