#pragma once

#include <array>

#include "qcorr/complex_matrix.hpp"

namespace qcorr::pauli2 {

/// Bloch parametrization of a two-qubit state: local vectors and the 3x3
/// correlation matrix, axis order (x, y, z). Everything the Pauli-MUB
/// detectors need, extracted in one pass over the 4x4 matrix.
struct Bloch {
    std::array<double, 3> rA{};
    std::array<double, 3> rB{};
    std::array<double, 9> T{};  // row-major, T[3*a + b] = <sigma_a sigma_b>
};

Bloch bloch_of(const ComplexMatrix& rho4);

/// Per-pair outcome statistics for matched Pauli measurements along one
/// axis: mutual information (bits), conditional sum (identity pairing, +1
/// outcome listed first), |Pearson| with any nondegenerate linear
/// observables.
struct PairObs {
    double I = 0.0;
    double S = 0.0;
    double abs_C = 0.0;
    bool s_defined = false;
    bool c_defined = false;
};

PairObs pauli_pair_stats(const Bloch& b, int axis);

/// Most negative eigenvalue of the partial transpose (on A) of rho4.
double min_eig_partial_transpose(const ComplexMatrix& rho4);

/// Tr[W_i rho] for the five Bell witnesses, from the diagonal of T.
std::array<double, 5> witness_values(const Bloch& b);

struct LurParts {
    double lhs = 0.0;  // |C'_xx| + |C'_zz|
    double rhs = 0.0;  // (sum of the four local sigma_x/sigma_z variances)/2 - 1
};

LurParts lur_parts(const Bloch& b);

}  // namespace qcorr::pauli2
