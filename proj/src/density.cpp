#include "qcorr/density.hpp"

#include <cmath>
#include <string>

#include "qcorr/eig.hpp"
#include "qcorr/errors.hpp"

namespace qcorr {

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    if (!m.square()) throw contract_error("density matrix must be square");
    if (!m.all_finite()) throw contract_error("density matrix has non-finite entries");
    if (!m.is_hermitian(kHermTol)) throw contract_error("density matrix not Hermitian");
    if (std::abs(m.trace() - cplx{1.0, 0.0}) > kTraceTol)
        throw contract_error("density matrix trace != 1");
    return DensityMatrix(std::move(m));
}

double DensityMatrix::min_eigenvalue() const { return min_hermitian_eigenvalue(m_); }

void DensityMatrix::validate_psd() const {
    const double lo = min_eigenvalue();
    if (lo < kPsdTol)
        throw contract_error("density matrix not PSD: min eigenvalue " + std::to_string(lo));
}

double DensityMatrix::purity() const {
    double s = 0.0;
    for (const cplx& v : m_.data()) s += std::norm(v);
    return s;  // Tr[M M] = sum |m_ij|^2 for Hermitian M
}

DensityMatrix pure_state_density(const std::vector<cplx>& amplitudes) {
    double n2 = 0.0;
    for (const cplx& a : amplitudes) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > 1e-9) throw contract_error("state vector not normalized");
    return DensityMatrix::from_matrix(outer(amplitudes));
}

DensityMatrix convex_mix(const std::vector<double>& weights,
                         const std::vector<DensityMatrix>& states) {
    if (weights.empty() || weights.size() != states.size())
        throw contract_error("convex_mix: weight/state count mismatch");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < -1e-12) throw contract_error("convex_mix: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw contract_error("convex_mix: weights must sum to 1");
    ComplexMatrix acc(states[0].dim(), states[0].dim());
    for (size_t i = 0; i < states.size(); ++i) acc += weights[i] * states[i].matrix();
    return DensityMatrix::from_matrix(std::move(acc));
}

BipartiteState BipartiteState::make(int dA, int dB, DensityMatrix rho) {
    if (dA < 2 || dB < 2 || dA > 16 || dB > 16)
        throw contract_error("subsystem dimensions must be in [2, 16]");
    if (rho.dim() != dA * dB) throw contract_error("state dimension != dA * dB");
    return BipartiteState{dA, dB, std::move(rho)};
}

ComplexMatrix partial_transpose(const BipartiteState& s, Subsystem sub) {
    const int dA = s.dA, dB = s.dB;
    const ComplexMatrix& m = s.rho.matrix();
    ComplexMatrix out(dA * dB, dA * dB);
    for (int a = 0; a < dA; ++a)
        for (int b = 0; b < dB; ++b)
            for (int a2 = 0; a2 < dA; ++a2)
                for (int b2 = 0; b2 < dB; ++b2) {
                    const cplx v = m(a * dB + b, a2 * dB + b2);
                    if (sub == Subsystem::A)
                        out(a2 * dB + b, a * dB + b2) = v;
                    else
                        out(a * dB + b2, a2 * dB + b) = v;
                }
    return out;
}

DensityMatrix partial_trace(const BipartiteState& s, Subsystem keep) {
    const int dA = s.dA, dB = s.dB;
    const ComplexMatrix& m = s.rho.matrix();
    if (keep == Subsystem::A) {
        ComplexMatrix out(dA, dA);
        for (int a = 0; a < dA; ++a)
            for (int a2 = 0; a2 < dA; ++a2) {
                cplx acc = 0.0;
                for (int b = 0; b < dB; ++b) acc += m(a * dB + b, a2 * dB + b);
                out(a, a2) = acc;
            }
        return DensityMatrix::from_matrix(std::move(out));
    }
    ComplexMatrix out(dB, dB);
    for (int b = 0; b < dB; ++b)
        for (int b2 = 0; b2 < dB; ++b2) {
            cplx acc = 0.0;
            for (int a = 0; a < dA; ++a) acc += m(a * dB + b, a * dB + b2);
            out(b, b2) = acc;
        }
    return DensityMatrix::from_matrix(std::move(out));
}

}  // namespace qcorr
