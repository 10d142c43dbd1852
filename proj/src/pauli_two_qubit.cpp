#include "qcorr/pauli_two_qubit.hpp"

#include <cmath>

#include "qcorr/eig.hpp"
#include "qcorr/errors.hpp"

namespace qcorr::pauli2 {

namespace {

constexpr double kZeroMarginal = 1e-12;
constexpr double kVarEps = 1e-12;

// sigma_x, sigma_y, sigma_z as 2x2 entry tables.
const cplx kPauli[3][2][2] = {
    {{{0.0, 0.0}, {1.0, 0.0}}, {{1.0, 0.0}, {0.0, 0.0}}},
    {{{0.0, 0.0}, {0.0, -1.0}}, {{0.0, 1.0}, {0.0, 0.0}}},
    {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {-1.0, 0.0}}},
};

const cplx kIdentity2[2][2] = {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}}};

double product_expectation(const ComplexMatrix& rho, const cplx (&p)[2][2],
                           const cplx (&q)[2][2]) {
    cplx acc = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2)
                    acc += rho(a * 2 + b, a2 * 2 + b2) * p[a2][a] * q[b2][b];
    return acc.real();
}

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

Bloch bloch_of(const ComplexMatrix& rho4) {
    if (rho4.rows() != 4 || rho4.cols() != 4) throw contract_error("bloch_of: 4x4 matrix required");
    Bloch b;
    for (int k = 0; k < 3; ++k) {
        b.rA[k] = product_expectation(rho4, kPauli[k], kIdentity2);
        b.rB[k] = product_expectation(rho4, kIdentity2, kPauli[k]);
        for (int l = 0; l < 3; ++l) b.T[k * 3 + l] = product_expectation(rho4, kPauli[k], kPauli[l]);
    }
    return b;
}

PairObs pauli_pair_stats(const Bloch& b, int axis) {
    const double u = b.rA[axis];
    const double v = b.rB[axis];
    const double t = b.T[axis * 3 + axis];

    double p[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double si = i == 0 ? 1.0 : -1.0;
            const double sj = j == 0 ? 1.0 : -1.0;
            p[i][j] = std::max(0.0, (1.0 + si * u + sj * v + si * sj * t) / 4.0);
        }
    const double pa0 = p[0][0] + p[0][1], pa1 = p[1][0] + p[1][1];
    const double pb0 = p[0][0] + p[1][0], pb1 = p[0][1] + p[1][1];

    PairObs out;
    const double h_ab =
        entropy_term(p[0][0]) + entropy_term(p[0][1]) + entropy_term(p[1][0]) + entropy_term(p[1][1]);
    out.I = entropy_term(pa0) + entropy_term(pa1) + entropy_term(pb0) + entropy_term(pb1) - h_ab;

    if (pb0 > kZeroMarginal && pb1 > kZeroMarginal) {
        out.S = p[0][0] / pb0 + p[1][1] / pb1;
        out.s_defined = true;
    }

    const double var_a = 1.0 - u * u;
    const double var_b = 1.0 - v * v;
    if (var_a > kVarEps && var_b > kVarEps) {
        out.abs_C = std::fabs(t - u * v) / std::sqrt(var_a * var_b);
        out.c_defined = true;
    }
    return out;
}

double min_eig_partial_transpose(const ComplexMatrix& rho4) {
    ComplexMatrix pt(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 2; ++b2)
                    pt(a2 * 2 + b, a * 2 + b2) = rho4(a * 2 + b, a2 * 2 + b2);
    return min_hermitian_eigenvalue(pt);
}

std::array<double, 5> witness_values(const Bloch& b) {
    // Same five-operator bank as bell_witnesses(); W3 and W5 equal Bell
    // projectors and never go negative.
    const double xx = b.T[0], yy = b.T[4], zz = b.T[8];
    return {
        (1.0 + xx + yy + zz) / 4.0,  // I/2 - |Psi-><Psi-|
        (1.0 - xx - yy + zz) / 4.0,  // I/2 - |Psi+><Psi+|
        (1.0 + xx - yy + zz) / 4.0,  // = |Phi+><Phi+|
        (1.0 + xx - yy - zz) / 4.0,  // I/2 - |Phi-><Phi-|
        (1.0 - xx - yy - zz) / 4.0,  // = |Psi-><Psi-|
    };
}

LurParts lur_parts(const Bloch& b) {
    const double cxx = b.T[0] - b.rA[0] * b.rB[0];
    const double czz = b.T[8] - b.rA[2] * b.rB[2];
    LurParts out;
    out.lhs = std::fabs(cxx) + std::fabs(czz);
    out.rhs = ((1.0 - b.rA[0] * b.rA[0]) + (1.0 - b.rB[0] * b.rB[0]) +
               (1.0 - b.rA[2] * b.rA[2]) + (1.0 - b.rB[2] * b.rB[2])) /
                  2.0 -
              1.0;
    return out;
}

}  // namespace qcorr::pauli2
