#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double kZeroMarginal = 1e-12;
constexpr double kZeroSigma = 1e-12;

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

struct Moments {
    double mean_a, mean_b, mean_ab, var_a, var_b;
};

Moments joint_moments(const JointDistribution& j, std::span<const double> fa,
                      std::span<const double> fb) {
    Moments m{0.0, 0.0, 0.0, 0.0, 0.0};
    double ea2 = 0.0, eb2 = 0.0;
    for (int a = 0; a < j.dim; ++a)
        for (int b = 0; b < j.dim; ++b) {
            const double p = j.at(a, b);
            m.mean_a += p * fa[a];
            m.mean_b += p * fb[b];
            m.mean_ab += p * fa[a] * fb[b];
            ea2 += p * fa[a] * fa[a];
            eb2 += p * fb[b] * fb[b];
        }
    m.var_a = ea2 - m.mean_a * m.mean_a;
    m.var_b = eb2 - m.mean_b * m.mean_b;
    return m;
}

}  // namespace

double JointDistribution::marginal_a(int a) const {
    double s = 0.0;
    for (int b = 0; b < dim; ++b) s += at(a, b);
    return s;
}

double JointDistribution::marginal_b(int b) const {
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += at(a, b);
    return s;
}

JointDistribution JointDistribution::transposed() const {
    JointDistribution t;
    t.dim = dim;
    t.table.resize(table.size());
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) t.table[static_cast<size_t>(b) * dim + a] = at(a, b);
    return t;
}

JointDistribution JointDistribution::from_table(int dim, std::vector<double> table) {
    if (static_cast<int>(table.size()) != dim * dim)
        throw contract_error("joint table size != d^2");
    double sum = 0.0;
    for (double& p : table) {
        if (p < -1e-12) throw contract_error("joint table has a negative entry");
        if (p < 0.0) p = 0.0;
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw contract_error("joint table does not sum to 1");
    return JointDistribution{dim, std::move(table)};
}

JointDistribution joint_distribution(const BipartiteState& s, const OrthonormalBasis& basisA,
                                     const OrthonormalBasis& basisB) {
    if (basisA.dim() != s.dA || basisB.dim() != s.dB)
        throw contract_error("joint_distribution: basis dimension mismatch");
    const int d = s.dA;
    std::vector<double> table(static_cast<size_t>(d) * d);
    for (int a = 0; a < d; ++a) {
        const auto va = basisA.vector(a);
        for (int b = 0; b < d; ++b) {
            const auto w = tensor_product(va, basisB.vector(b));
            table[static_cast<size_t>(a) * d + b] = expectation(s.rho.matrix(), w).real();
        }
    }
    return JointDistribution::from_table(d, std::move(table));
}

double conditional(const JointDistribution& j, int a, int b) {
    const double pb = j.marginal_b(b);
    if (pb <= kZeroMarginal)
        throw undefined_conditional("conditional: outcome b=" + std::to_string(b) +
                                    " has zero probability");
    return j.at(a, b) / pb;
}

DensityMatrix conditioned_state(const BipartiteState& s, const OrthonormalBasis& basisB,
                                int b) {
    if (basisB.dim() != s.dB) throw contract_error("conditioned_state: basis dim mismatch");
    const auto vb = basisB.vector(b);
    const int dA = s.dA, dB = s.dB;
    const ComplexMatrix& m = s.rho.matrix();
    ComplexMatrix out(dA, dA);
    for (int a = 0; a < dA; ++a)
        for (int a2 = 0; a2 < dA; ++a2) {
            cplx acc = 0.0;
            for (int k = 0; k < dB; ++k)
                for (int l = 0; l < dB; ++l)
                    acc += std::conj(vb[k]) * m(a * dB + k, a2 * dB + l) * vb[l];
            out(a, a2) = acc;
        }
    const double pb = out.trace().real();
    if (pb <= kZeroMarginal)
        throw undefined_conditional("conditioned_state: zero-probability outcome");
    out *= cplx{1.0 / pb, 0.0};
    return DensityMatrix::from_matrix(std::move(out));
}

double shannon_entropy_bits(std::span<const double> p) {
    double h = 0.0;
    for (double x : p) h += entropy_term(x);
    return h;
}

double mutual_information(const JointDistribution& j) {
    double h_ab = 0.0;
    std::vector<double> pa(j.dim, 0.0), pb(j.dim, 0.0);
    for (int a = 0; a < j.dim; ++a)
        for (int b = 0; b < j.dim; ++b) {
            const double p = j.at(a, b);
            h_ab += entropy_term(p);
            pa[a] += p;
            pb[b] += p;
        }
    return shannon_entropy_bits(pa) + shannon_entropy_bits(pb) - h_ab;
}

std::complex<double> pearson(const BipartiteState& s, const Observable& obsA,
                             const Observable& obsB) {
    const JointDistribution j = joint_distribution(s, obsA.basis, obsB.basis);
    const Moments m = joint_moments(j, obsA.eigenvalues, obsB.eigenvalues);
    const double sa = std::sqrt(std::max(0.0, m.var_a));
    const double sb = std::sqrt(std::max(0.0, m.var_b));
    if (sa <= kZeroSigma || sb <= kZeroSigma)
        throw degenerate_observable("pearson: observable variance vanishes on this state");
    return {(m.mean_ab - m.mean_a * m.mean_b) / (sa * sb), 0.0};
}

double conditional_sum(const JointDistribution& j, std::span<const int> pairing) {
    if (!pairing.empty() && static_cast<int>(pairing.size()) != j.dim)
        throw contract_error("conditional_sum: pairing size != d");
    double s = 0.0;
    for (int b = 0; b < j.dim; ++b) {
        const int a = pairing.empty() ? b : pairing[b];
        s += conditional(j, a, b);
    }
    return s;
}

double conditional_sum_max(const JointDistribution& j) {
    if (j.dim > 5) throw contract_error("conditional_sum_max: exhaustive search limited to d <= 5");
    std::vector<int> perm(j.dim);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 0.0;
    do {
        best = std::max(best, conditional_sum(j, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace {

PairStats pair_stats(const BipartiteState& s, const OrthonormalBasis& ba,
                     const OrthonormalBasis& bb) {
    const JointDistribution j = joint_distribution(s, ba, bb);
    PairStats st;
    st.I = mutual_information(j);

    std::vector<double> pa(j.dim), pb(j.dim);
    for (int i = 0; i < j.dim; ++i) {
        pa[i] = j.marginal_a(i);
        pb[i] = j.marginal_b(i);
    }
    st.H_A = shannon_entropy_bits(pa);
    st.H_B = shannon_entropy_bits(pb);

    std::vector<double> f(j.dim);
    for (int i = 0; i < j.dim; ++i) f[i] = static_cast<double>(i);
    const Moments m = joint_moments(j, f, f);
    st.var_A = m.var_a;
    st.var_B = m.var_b;
    const double sa = std::sqrt(std::max(0.0, m.var_a));
    const double sb = std::sqrt(std::max(0.0, m.var_b));
    if (sa > kZeroSigma && sb > kZeroSigma) {
        st.C = {(m.mean_ab - m.mean_a * m.mean_b) / (sa * sb), 0.0};
        st.abs_C = std::abs(st.C);
        st.c_defined = true;
    }

    try {
        st.S = conditional_sum(j);
        st.s_defined = true;
    } catch (const undefined_conditional&) {
        st.S = std::numeric_limits<double>::quiet_NaN();
    }
    return st;
}

double sum_top2(std::vector<double> v) {
    if (v.size() < 2) throw contract_error("report needs at least 2 pairs");
    std::partial_sort(v.begin(), v.begin() + 2, v.end(), std::greater<>());
    return v[0] + v[1];
}

}  // namespace

double CorrelationReport::mi_sum_all() const {
    double s = 0.0;
    for (const auto& p : pairs) s += p.I;
    return s;
}

double CorrelationReport::mi_sum_top2() const {
    std::vector<double> v;
    for (const auto& p : pairs) v.push_back(p.I);
    return sum_top2(std::move(v));
}

double CorrelationReport::pearson_sum_all() const {
    double s = 0.0;
    for (const auto& p : pairs) s += p.abs_C;
    return s;
}

double CorrelationReport::pearson_sum_top2() const {
    std::vector<double> v;
    for (const auto& p : pairs) v.push_back(p.abs_C);
    return sum_top2(std::move(v));
}

double CorrelationReport::s_sum_all() const {
    double s = 0.0;
    for (const auto& p : pairs) s += p.S;
    return s;
}

CorrelationReport full_report(const BipartiteState& s, const MubSet& mubs) {
    if (mubs.dim() != s.dA) throw contract_error("full_report: MUB dimension mismatch");
    CorrelationReport rep;
    rep.dim = s.dA;
    for (int k = 0; k < mubs.size(); ++k)
        rep.pairs.push_back(pair_stats(s, mubs.basis(k), mubs.basis(k)));
    return rep;
}

CorrelationReport report_for_bases(const BipartiteState& s,
                                   std::span<const OrthonormalBasis> basesA,
                                   std::span<const OrthonormalBasis> basesB) {
    if (basesA.size() != basesB.size())
        throw contract_error("report_for_bases: side lists differ in length");
    CorrelationReport rep;
    rep.dim = s.dA;
    for (size_t k = 0; k < basesA.size(); ++k)
        rep.pairs.push_back(pair_stats(s, basesA[k], basesB[k]));
    return rep;
}

}  // namespace qcorr
