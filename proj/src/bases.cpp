#include "qcorr/bases.hpp"

#include <cmath>
#include <set>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double kOrthoTol = 1e-10;
constexpr double kMubTol = 1e-9;
constexpr double kUnitaryTol = 1e-9;

void normalize_phases(ComplexMatrix& cols) {
    for (int j = 0; j < cols.cols(); ++j) {
        for (int i = 0; i < cols.rows(); ++i) {
            const double mag = std::abs(cols(i, j));
            if (mag > 1e-12) {
                const cplx ph = std::conj(cols(i, j)) / mag;
                for (int k = 0; k < cols.rows(); ++k) cols(k, j) *= ph;
                break;
            }
        }
    }
}

bool is_prime(int d) {
    if (d < 2) return false;
    for (int k = 2; k * k <= d; ++k)
        if (d % k == 0) return false;
    return true;
}

}  // namespace

OrthonormalBasis OrthonormalBasis::from_columns(ComplexMatrix columns) {
    if (!columns.square() || columns.rows() < 2)
        throw contract_error("basis must be a square matrix of dim >= 2 column vectors");
    const ComplexMatrix gram = columns.dagger() * columns;
    if (gram.max_abs_diff(ComplexMatrix::identity(columns.rows())) > kOrthoTol)
        throw contract_error("basis columns not orthonormal");
    normalize_phases(columns);
    return OrthonormalBasis(std::move(columns));
}

std::vector<cplx> OrthonormalBasis::vector(int i) const {
    std::vector<cplx> v(dim());
    for (int r = 0; r < dim(); ++r) v[r] = columns_(r, i);
    return v;
}

MubPair MubPair::make(OrthonormalBasis first, OrthonormalBasis second) {
    if (first.dim() != second.dim()) throw contract_error("MUB pair dimension mismatch");
    const int d = first.dim();
    const ComplexMatrix overlaps = first.columns().dagger() * second.columns();
    double cmax = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double p = std::norm(overlaps(i, j));
            if (std::abs(p - 1.0 / d) > kMubTol)
                throw contract_error("bases are not mutually unbiased");
            cmax = std::max(cmax, std::abs(overlaps(i, j)));
        }
    return MubPair{std::move(first), std::move(second), cmax};
}

MubSet MubSet::make(std::vector<OrthonormalBasis> bases) {
    if (bases.size() < 2) throw contract_error("MUB set needs at least 2 bases");
    for (size_t i = 0; i < bases.size(); ++i)
        for (size_t j = i + 1; j < bases.size(); ++j)
            MubPair::make(bases[i], bases[j]);  // throws if any pair fails
    return MubSet(std::move(bases));
}

Observable Observable::make(OrthonormalBasis basis, std::vector<double> eigenvalues) {
    if (static_cast<int>(eigenvalues.size()) != basis.dim())
        throw contract_error("observable eigenvalue count != dim");
    std::set<double> distinct(eigenvalues.begin(), eigenvalues.end());
    if (static_cast<int>(distinct.size()) != basis.dim())
        throw contract_error("observable eigenvalues must be distinct");
    return Observable{std::move(basis), std::move(eigenvalues)};
}

ComplexMatrix Observable::matrix() const {
    const int d = basis.dim();
    ComplexMatrix m(d, d);
    for (int k = 0; k < d; ++k) {
        const auto v = basis.vector(k);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i, j) += eigenvalues[k] * v[i] * std::conj(v[j]);
    }
    return m;
}

OrthonormalBasis computational_basis(int d) {
    if (d < 2 || d > 16) throw contract_error("invalid dimension " + std::to_string(d));
    return OrthonormalBasis::from_columns(ComplexMatrix::identity(d));
}

OrthonormalBasis fourier_basis(int d) {
    if (d < 2 || d > 16) throw contract_error("invalid dimension " + std::to_string(d));
    ComplexMatrix f(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k)
        for (int j = 0; j < d; ++j) {
            const double phi = 2.0 * M_PI * k * j / d;
            f(k, j) = norm * cplx{std::cos(phi), std::sin(phi)};
        }
    return OrthonormalBasis::from_columns(std::move(f));
}

MubSet qubit_pauli_mubs() {
    const double s = 1.0 / std::sqrt(2.0);
    const auto z = computational_basis(2);
    const auto x = fourier_basis(2);
    const auto y = OrthonormalBasis::from_columns(
        ComplexMatrix::from_rows({{s, s}, {cplx{0.0, s}, cplx{0.0, -s}}}));
    return MubSet::make({z, x, y});
}

MubSet prime_d_mubs(int d) {
    if (!is_prime(d) || d > 13)
        throw contract_error("full MUB sets are provided for prime d <= 13 only");
    if (d == 2) return qubit_pauli_mubs();

    // Odd prime: computational basis plus d quadratic-phase bases,
    // v^(m)_k[j] = w^(m j^2 + k j) / sqrt d with w = e^{2 pi i / d}.
    // Cross overlaps are Gauss sums of magnitude sqrt d.
    std::vector<OrthonormalBasis> bases;
    bases.push_back(computational_basis(d));
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int m = 0; m < d; ++m) {
        ComplexMatrix cols(d, d);
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j) {
                const int e = (m * j * j + k * j) % d;
                const double phi = 2.0 * M_PI * e / d;
                cols(j, k) = norm * cplx{std::cos(phi), std::sin(phi)};
            }
        bases.push_back(OrthonormalBasis::from_columns(std::move(cols)));
    }
    return MubSet::make(std::move(bases));
}

OrthonormalBasis rotate_basis(const OrthonormalBasis& b, const ComplexMatrix& unitary) {
    if (!unitary.square() || unitary.rows() != b.dim())
        throw contract_error("rotation dimension mismatch");
    if (!unitary.is_unitary(kUnitaryTol)) throw contract_error("rotation matrix not unitary");
    return OrthonormalBasis::from_columns(unitary * b.columns());
}

Observable linear_observable(const OrthonormalBasis& b) {
    std::vector<double> eigs(b.dim());
    for (int i = 0; i < b.dim(); ++i) eigs[i] = static_cast<double>(i);
    return Observable::make(b, std::move(eigs));
}

}  // namespace qcorr
