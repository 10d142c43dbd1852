#pragma once

#include <vector>

#include "qcorr/complex_matrix.hpp"

namespace qcorr {

/// Hermitian, unit-trace, PSD (within tolerance) operator. Hermiticity and
/// trace are checked on construction; the PSD check costs an
/// eigendecomposition and is exposed separately for boundary validation.
class DensityMatrix {
public:
    static constexpr double kHermTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPsdTol = -1e-9;

    DensityMatrix() = default;

    /// Validates Hermiticity and unit trace; throws contract_error.
    static DensityMatrix from_matrix(ComplexMatrix m);

    int dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }

    double min_eigenvalue() const;
    /// Throws contract_error if min eigenvalue < -1e-9.
    void validate_psd() const;

    double purity() const;  // Tr[rho^2]

private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

DensityMatrix pure_state_density(const std::vector<cplx>& amplitudes);

DensityMatrix convex_mix(const std::vector<double>& weights,
                         const std::vector<DensityMatrix>& states);

enum class Subsystem { A, B };

/// Two subsystems of equal dimension d; global index a*d + b (A-major).
struct BipartiteState {
    int dA = 0;
    int dB = 0;
    DensityMatrix rho;

    static BipartiteState make(int dA, int dB, DensityMatrix rho);
    int dim() const { return dA * dB; }
};

/// Transpose on one subsystem's index pair; Hermitian, trace preserved.
ComplexMatrix partial_transpose(const BipartiteState& s, Subsystem sub);

DensityMatrix partial_trace(const BipartiteState& s, Subsystem keep);

}  // namespace qcorr
