#pragma once

#include <vector>

#include "qcorr/complex_matrix.hpp"

namespace qcorr {

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // orthonormal columns, column i pairs with values[i]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Sweeps until the
/// off-diagonal Frobenius norm drops below 1e-12. Throws contract_error for
/// non-square or non-Hermitian (tol 1e-10) input.
EigenSystem hermitian_eigendecomposition(const ComplexMatrix& m);

/// Eigenvalues only (ascending), skipping eigenvector accumulation.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

double min_hermitian_eigenvalue(const ComplexMatrix& m);

}  // namespace qcorr
