#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace qcorr {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Small (per-subsystem dim <= 16), value
/// semantics throughout; every operation returns a fresh matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);

    static ComplexMatrix identity(int n);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    ComplexMatrix dagger() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs_diff(const ComplexMatrix& other) const;
    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx s);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; row-major, first-factor-major index convention:
/// (A (x) B)[(i*rowsB + k), (j*colsB + l)] = A(i,j) * B(k,l).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

std::vector<cplx> tensor_product(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// <a|b> with the physics convention (conjugate on the left argument).
cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// |v><v|
ComplexMatrix outer(const std::vector<cplx>& v);

/// <v| m |v>
cplx expectation(const ComplexMatrix& m, const std::vector<cplx>& v);

}  // namespace qcorr
