#pragma once

#include <string>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/density.hpp"

namespace qcorr {

/// Strict-inequality slack: boundary states (rho_cc and friends) classify as
/// "not detected", matching the strict '>' in every criterion.
constexpr double kDetectionSlack = 1e-9;

struct Verdict {
    std::string detector;
    bool detected = false;
    double margin = 0.0;  // signed distance past the threshold
    double threshold = 0.0;
};

/// Ground truth for dA*dB <= 6 (necessary and sufficient); for larger
/// dimensions NPT still implies entangled. margin = -(min eigenvalue of the
/// partial transpose), detected iff min eigenvalue < -1e-10.
Verdict ppt_oracle(const BipartiteState& s);

/// I sum over the two largest pairs > log2 d.
Verdict mi_criterion(const CorrelationReport& report, int d);

/// Qubit three-MUB form: I_AB + I_CD + I_EF > 1.
Verdict mi3_criterion(const CorrelationReport& report);

/// Sum of |C| over n_mubs pairs (2 or 3) > 1.
Verdict pearson_criterion(const CorrelationReport& report, int n_mubs);

/// Product form |C_AB * C_CD| > 1/4 over the first two pairs.
Verdict pearson_product_criterion(const CorrelationReport& report);

/// Sum of the two largest S values tested against [1, d+1]; with exactly
/// two pairs this is the plain S_AB + S_CD interval test.
Verdict condprob_criterion(const CorrelationReport& report, int d);

struct WitnessOperator {
    std::string label;
    ComplexMatrix matrix;  // 4x4 Hermitian
};

/// W1..W5: I/2 minus each Bell projector, plus the Pauli-sum witness.
const std::vector<WitnessOperator>& bell_witnesses();

/// One verdict per witness; margin = -Tr[W rho].
std::vector<Verdict> witness_bank(const BipartiteState& s);

/// Detected iff any single witness fires; margin = best witness margin.
Verdict witness_bank_aggregate(const BipartiteState& s);

/// Local-uncertainty-relation test on sigma_x / sigma_z covariances.
Verdict lur_criterion(const BipartiteState& s);

/// True iff I_AB + I_CD reaches 2 log2 d (within 1e-6) in the supplied
/// per-side complementary bases.
bool max_entanglement_test(const BipartiteState& s, const MubPair& basesA,
                           const MubPair& basesB);

struct ClassificationReport {
    double S_first = 0.0;
    double S_second = 0.0;
    std::vector<double> diag_conditionals_first;
    std::vector<double> diag_conditionals_second;
    bool maximal_on_first = false;   // p(a_i|b_i) = 1 for all i
    bool uniform_on_second = false;  // p(c_i|d_i) = 1/d for all i
};

/// Conditional-probability structure of a declared CC/CQ/QQ state on a
/// complementary pair (same pair used on both sides).
ClassificationReport cc_cq_classification_check(const BipartiteState& s, const MubPair& mub);

}  // namespace qcorr
