#include "qcorr/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kOffDiagTarget = 1e-12;
constexpr int kMaxSweeps = 64;

double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i + 1; j < a.cols(); ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). The rotation
//   V = [[c, s*e^{i phi}], [-s*e^{-i phi}, c]]   on coordinates (p, q)
// with e^{i phi} = a(p,q)/|a(p,q)| reduces to the real symmetric 2x2 problem.
void rotate(ComplexMatrix& a, ComplexMatrix* vecs, int p, int q) {
    const cplx apq = a(p, q);
    const double g = std::abs(apq);
    if (g == 0.0) return;
    const cplx phase = apq / g;

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * g);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const cplx vpq = s * phase;         // V(p,q)
    const cplx vqp = -s * std::conj(phase);  // V(q,p)

    const int n = a.rows();
    // A <- V^dagger A V : update columns p,q then rows p,q.
    for (int i = 0; i < n; ++i) {
        const cplx aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip + vqp * aiq;
        a(i, q) = vpq * aip + c * aiq;
    }
    for (int j = 0; j < n; ++j) {
        const cplx apj = a(p, j), aqj = a(q, j);
        a(p, j) = c * apj + std::conj(vqp) * aqj;
        a(q, j) = std::conj(vpq) * apj + c * aqj;
    }
    // Clean the targeted pair; rounding would otherwise leave ~1e-17 residue.
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cplx{a(p, p).real(), 0.0};
    a(q, q) = cplx{a(q, q).real(), 0.0};

    if (vecs) {
        for (int i = 0; i < n; ++i) {
            const cplx vip = (*vecs)(i, p), viq = (*vecs)(i, q);
            (*vecs)(i, p) = c * vip + vqp * viq;
            (*vecs)(i, q) = vpq * vip + c * viq;
        }
    }
}

void jacobi(ComplexMatrix& a, ComplexMatrix* vecs) {
    const int n = a.rows();
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_frobenius(a) < kOffDiagTarget) return;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) rotate(a, vecs, p, q);
    }
    if (offdiag_frobenius(a) >= kOffDiagTarget)
        throw std::runtime_error("jacobi: no convergence within sweep limit");
}

void check_input(const ComplexMatrix& m) {
    if (!m.square()) throw contract_error("eigendecomposition: matrix not square");
    if (!m.all_finite()) throw contract_error("eigendecomposition: non-finite entries");
    if (!m.is_hermitian(kHermTol)) throw contract_error("eigendecomposition: matrix not Hermitian");
}

// First nonzero component of each eigenvector made real non-negative.
void fix_column_phases(ComplexMatrix& v) {
    for (int j = 0; j < v.cols(); ++j) {
        for (int i = 0; i < v.rows(); ++i) {
            const double mag = std::abs(v(i, j));
            if (mag > 1e-12) {
                const cplx ph = std::conj(v(i, j)) / mag;
                for (int k = 0; k < v.rows(); ++k) v(k, j) *= ph;
                break;
            }
        }
    }
}

}  // namespace

EigenSystem hermitian_eigendecomposition(const ComplexMatrix& m) {
    check_input(m);
    ComplexMatrix a = m;
    ComplexMatrix vecs = ComplexMatrix::identity(m.rows());
    jacobi(a, &vecs);

    const int n = m.rows();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = vecs(i, order[j]);
    }
    fix_column_phases(out.vectors);
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    check_input(m);
    ComplexMatrix a = m;
    jacobi(a, nullptr);
    std::vector<double> vals(m.rows());
    for (int i = 0; i < m.rows(); ++i) vals[i] = a(i, i).real();
    std::sort(vals.begin(), vals.end());
    return vals;
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
    return hermitian_eigenvalues(m).front();
}

}  // namespace qcorr
