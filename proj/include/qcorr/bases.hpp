#pragma once

#include <vector>

#include "qcorr/complex_matrix.hpp"

namespace qcorr {

/// d orthonormal column vectors. Construction validates pairwise inner
/// products (tol 1e-10) and normalizes each vector's global phase so its
/// first nonzero component is real non-negative.
class OrthonormalBasis {
public:
    static OrthonormalBasis from_columns(ComplexMatrix columns);

    int dim() const { return columns_.rows(); }
    const ComplexMatrix& columns() const { return columns_; }
    std::vector<cplx> vector(int i) const;

private:
    explicit OrthonormalBasis(ComplexMatrix c) : columns_(std::move(c)) {}
    ComplexMatrix columns_;
};

/// Two bases with |<a_i|c_j>|^2 = 1/d for all i,j (tol 1e-9).
struct MubPair {
    OrthonormalBasis first;
    OrthonormalBasis second;
    double overlap_c;  // max_{j,k} |<a_j|c_k>| = 1/sqrt(d)

    static MubPair make(OrthonormalBasis first, OrthonormalBasis second);
};

/// 2, 3, or d+1 pairwise mutually unbiased bases.
class MubSet {
public:
    static MubSet make(std::vector<OrthonormalBasis> bases);

    int dim() const { return bases_.front().dim(); }
    int size() const { return static_cast<int>(bases_.size()); }
    const OrthonormalBasis& basis(int i) const { return bases_[i]; }
    const std::vector<OrthonormalBasis>& bases() const { return bases_; }

private:
    explicit MubSet(std::vector<OrthonormalBasis> b) : bases_(std::move(b)) {}
    std::vector<OrthonormalBasis> bases_;
};

/// Nondegenerate observable: distinct eigenvalue per basis vector.
struct Observable {
    OrthonormalBasis basis;
    std::vector<double> eigenvalues;

    static Observable make(OrthonormalBasis basis, std::vector<double> eigenvalues);
    ComplexMatrix matrix() const;
};

OrthonormalBasis computational_basis(int d);

/// |j-bar> = (1/sqrt d) sum_k e^{i 2 pi k j / d} |k>; unbiased w.r.t. the
/// computational basis for every d.
OrthonormalBasis fourier_basis(int d);

/// sigma_z, sigma_x, sigma_y eigenbases (+1 eigenvector listed first).
MubSet qubit_pauli_mubs();

/// Full set of d+1 MUBs for prime d <= 13 (Pauli triple for d=2, Gauss-sum
/// quadratic-phase family for odd primes).
MubSet prime_d_mubs(int d);

OrthonormalBasis rotate_basis(const OrthonormalBasis& b, const ComplexMatrix& unitary);

/// Eigenvalues 0..d-1 attached in basis order.
Observable linear_observable(const OrthonormalBasis& b);

}  // namespace qcorr
