#include "qcorr/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcorr/eig.hpp"
#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double kPptEig = -1e-10;

ComplexMatrix pauli(char which) {
    switch (which) {
        case 'x': return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
        case 'y':
            return ComplexMatrix::from_rows({{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}});
        default: return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    }
}

// (1 + sx*XX + sy*YY + sz*ZZ) / 4
ComplexMatrix pauli_diag_combo(double sx, double sy, double sz) {
    ComplexMatrix m = ComplexMatrix::identity(4);
    m += sx * tensor_product(pauli('x'), pauli('x'));
    m += sy * tensor_product(pauli('y'), pauli('y'));
    m += sz * tensor_product(pauli('z'), pauli('z'));
    m *= 0.25;
    return m;
}

double real_trace_product(const ComplexMatrix& rho, const ComplexMatrix& op) {
    // Tr[rho op] for Hermitian factors.
    cplx t = 0.0;
    for (int i = 0; i < rho.rows(); ++i)
        for (int k = 0; k < rho.cols(); ++k) t += rho(i, k) * op(k, i);
    return t.real();
}

void require_two_qubits(const BipartiteState& s, const char* who) {
    if (s.dA != 2 || s.dB != 2) throw contract_error(std::string(who) + ": two qubits required");
}

}  // namespace

Verdict ppt_oracle(const BipartiteState& s) {
    const ComplexMatrix pt = partial_transpose(s, Subsystem::A);
    const double lo = min_hermitian_eigenvalue(pt);
    return Verdict{"ppt", lo < kPptEig, -lo, 0.0};
}

Verdict mi_criterion(const CorrelationReport& report, int d) {
    if (report.pairs.size() < 2) throw contract_error("mi_criterion: need >= 2 pairs");
    const double threshold = std::log2(static_cast<double>(d));
    const double sum = report.mi_sum_top2();
    return Verdict{"mi", sum > threshold + kDetectionSlack, sum - threshold, threshold};
}

Verdict mi3_criterion(const CorrelationReport& report) {
    if (report.dim != 2) throw contract_error("mi3_criterion: defined for qubits only");
    if (report.pairs.size() != 3) throw contract_error("mi3_criterion: need exactly 3 pairs");
    const double sum = report.mi_sum_all();
    return Verdict{"mi3", sum > 1.0 + kDetectionSlack, sum - 1.0, 1.0};
}

Verdict pearson_criterion(const CorrelationReport& report, int n_mubs) {
    if (n_mubs != 2 && n_mubs != 3) throw contract_error("pearson_criterion: n_mubs must be 2 or 3");
    if (static_cast<int>(report.pairs.size()) < n_mubs)
        throw contract_error("pearson_criterion: report has too few pairs");
    double sum = 0.0;
    for (int k = 0; k < n_mubs; ++k) {
        if (!report.pairs[k].c_defined)
            throw degenerate_observable("pearson_criterion: degenerate observable in pair " +
                                        std::to_string(k));
        sum += report.pairs[k].abs_C;
    }
    const std::string name = n_mubs == 2 ? "pearson2" : "pearson3";
    return Verdict{name, sum > 1.0 + kDetectionSlack, sum - 1.0, 1.0};
}

Verdict pearson_product_criterion(const CorrelationReport& report) {
    if (report.pairs.size() < 2) throw contract_error("pearson_product: need >= 2 pairs");
    if (!report.pairs[0].c_defined || !report.pairs[1].c_defined)
        throw degenerate_observable("pearson_product: degenerate observable");
    const double prod = report.pairs[0].abs_C * report.pairs[1].abs_C;
    return Verdict{"pearson_prod", prod > 0.25 + kDetectionSlack, prod - 0.25, 0.25};
}

Verdict condprob_criterion(const CorrelationReport& report, int d) {
    if (report.pairs.size() < 2) throw contract_error("condprob_criterion: need >= 2 pairs");
    std::vector<double> s_values;
    for (const auto& p : report.pairs) {
        if (!p.s_defined)
            return Verdict{"condprob", false, -std::numeric_limits<double>::infinity(),
                           static_cast<double>(d + 1)};
        s_values.push_back(p.S);
    }
    // The two largest S values form the statistic; it is tested against the
    // whole interval, exactly like the two-pair form.
    std::sort(s_values.begin(), s_values.end());
    const size_t n = s_values.size();
    const double top2 = s_values[n - 1] + s_values[n - 2];
    const double upper = static_cast<double>(d) + 1.0;
    const double margin = std::max(top2 - upper, 1.0 - top2);
    const bool detected = top2 > upper + kDetectionSlack || top2 < 1.0 - kDetectionSlack;
    return Verdict{"condprob", detected, margin, upper};
}

const std::vector<WitnessOperator>& bell_witnesses() {
    static const std::vector<WitnessOperator> bank = [] {
        // W1, W2, W4 are I/2 minus the |Psi->, |Psi+>, |Phi-> projectors;
        // W3 and W5 coincide with the |Phi+> and |Psi-> projectors and are
        // PSD, so the bank leaves the Phi+ corner uncovered. All baseline
        // detection rates and Venn tallies are defined against exactly this
        // five-operator set; do not "complete" it.
        std::vector<WitnessOperator> w;
        w.push_back({"W1", pauli_diag_combo(+1.0, +1.0, +1.0)});
        w.push_back({"W2", pauli_diag_combo(-1.0, -1.0, +1.0)});
        w.push_back({"W3", pauli_diag_combo(+1.0, -1.0, +1.0)});
        w.push_back({"W4", pauli_diag_combo(+1.0, -1.0, -1.0)});
        w.push_back({"W5", pauli_diag_combo(-1.0, -1.0, -1.0)});
        return w;
    }();
    return bank;
}

std::vector<Verdict> witness_bank(const BipartiteState& s) {
    require_two_qubits(s, "witness_bank");
    std::vector<Verdict> out;
    for (const WitnessOperator& w : bell_witnesses()) {
        const double tr = real_trace_product(s.rho.matrix(), w.matrix);
        out.push_back(Verdict{w.label, -tr > kDetectionSlack, -tr, 0.0});
    }
    return out;
}

Verdict witness_bank_aggregate(const BipartiteState& s) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Verdict& v : witness_bank(s)) best = std::max(best, v.margin);
    return Verdict{"witness", best > kDetectionSlack, best, 0.0};
}

Verdict lur_criterion(const BipartiteState& s) {
    require_two_qubits(s, "lur_criterion");
    const ComplexMatrix& rho = s.rho.matrix();
    const DensityMatrix rho1 = partial_trace(s, Subsystem::A);
    const DensityMatrix rho2 = partial_trace(s, Subsystem::B);

    const ComplexMatrix sx = pauli('x'), sz = pauli('z');
    const double ax = real_trace_product(rho1.matrix(), sx);
    const double bx = real_trace_product(rho2.matrix(), sx);
    const double az = real_trace_product(rho1.matrix(), sz);
    const double bz = real_trace_product(rho2.matrix(), sz);
    const double cxx = real_trace_product(rho, tensor_product(sx, sx)) - ax * bx;
    const double czz = real_trace_product(rho, tensor_product(sz, sz)) - az * bz;

    const double lhs = std::abs(cxx) + std::abs(czz);
    const double rhs =
        ((1.0 - ax * ax) + (1.0 - bx * bx) + (1.0 - az * az) + (1.0 - bz * bz)) / 2.0 - 1.0;
    return Verdict{"lur", lhs > rhs + kDetectionSlack, lhs - rhs, rhs};
}

bool max_entanglement_test(const BipartiteState& s, const MubPair& basesA,
                           const MubPair& basesB) {
    const double target = 2.0 * std::log2(static_cast<double>(s.dA));
    const double i1 = mutual_information(joint_distribution(s, basesA.first, basesB.first));
    const double i2 = mutual_information(joint_distribution(s, basesA.second, basesB.second));
    return i1 + i2 >= target - 1e-6;
}

ClassificationReport cc_cq_classification_check(const BipartiteState& s, const MubPair& mub) {
    ClassificationReport rep;
    const JointDistribution j1 = joint_distribution(s, mub.first, mub.first);
    const JointDistribution j2 = joint_distribution(s, mub.second, mub.second);
    const int d = j1.dim;
    rep.maximal_on_first = true;
    rep.uniform_on_second = true;
    for (int i = 0; i < d; ++i) {
        const double c1 = conditional(j1, i, i);
        const double c2 = conditional(j2, i, i);
        rep.diag_conditionals_first.push_back(c1);
        rep.diag_conditionals_second.push_back(c2);
        rep.S_first += c1;
        rep.S_second += c2;
        if (std::abs(c1 - 1.0) > 1e-9) rep.maximal_on_first = false;
        if (std::abs(c2 - 1.0 / d) > 1e-9) rep.uniform_on_second = false;
    }
    return rep;
}

}  // namespace qcorr
