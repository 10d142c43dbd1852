#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qcorr/bases.hpp"
#include "qcorr/density.hpp"

namespace qcorr {

/// d x d outcome table p(a, b) from a local measurement pair; entries
/// clamped at 0, total within 1e-9 of 1.
struct JointDistribution {
    int dim = 0;
    std::vector<double> table;  // row-major, a-major

    double at(int a, int b) const { return table[static_cast<size_t>(a) * dim + b]; }
    double marginal_a(int a) const;
    double marginal_b(int b) const;
    JointDistribution transposed() const;

    static JointDistribution from_table(int dim, std::vector<double> table);
};

/// p(a_i, b_j) = <a_i b_j| rho |a_i b_j>.
JointDistribution joint_distribution(const BipartiteState& s, const OrthonormalBasis& basisA,
                                     const OrthonormalBasis& basisB);

/// p(a|b); throws undefined_conditional when p(b) <= 1e-12.
double conditional(const JointDistribution& j, int a, int b);

/// Subsystem-A state conditioned on outcome b of a B-side measurement.
DensityMatrix conditioned_state(const BipartiteState& s, const OrthonormalBasis& basisB, int b);

/// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy_bits(std::span<const double> p);

/// I = H(A) + H(B) - H(A,B), in bits.
double mutual_information(const JointDistribution& j);

/// Pearson coefficient (<AB> - <A><B>) / (sigma_A sigma_B) for the product
/// observable obsA (x) obsB. Complex-valued by contract; real here since the
/// factors commute. Throws degenerate_observable when either sigma <= 1e-12.
std::complex<double> pearson(const BipartiteState& s, const Observable& obsA,
                             const Observable& obsB);

/// S = sum_i p(a_{pairing[i]} | b_i); identity pairing when empty.
/// Throws undefined_conditional if any paired marginal is <= 1e-12.
double conditional_sum(const JointDistribution& j, std::span<const int> pairing = {});

/// Exhaustive maximum of conditional_sum over all d! pairings (d <= 5).
double conditional_sum_max(const JointDistribution& j);

struct PairStats {
    double I = 0.0;                    // mutual information, bits
    std::complex<double> C{0.0, 0.0};  // Pearson (linear observables)
    double abs_C = 0.0;
    double S = 0.0;      // conditional sum, identity pairing
    bool s_defined = false;
    bool c_defined = false;
    double H_A = 0.0;    // side-1 outcome entropy
    double H_B = 0.0;    // side-2 outcome entropy
    double var_A = 0.0;  // linear-observable variances
    double var_B = 0.0;
};

struct CorrelationReport {
    int dim = 0;
    std::vector<PairStats> pairs;

    double mi_sum_all() const;
    double mi_sum_top2() const;
    double pearson_sum_all() const;
    double pearson_sum_top2() const;
    double s_sum_all() const;
};

/// One PairStats per basis of the set, measured with the same basis on both
/// sides and linear observables.
CorrelationReport full_report(const BipartiteState& s, const MubSet& mubs);

/// Per-side basis lists (adapted-bases use cases).
CorrelationReport report_for_bases(const BipartiteState& s,
                                   std::span<const OrthonormalBasis> basesA,
                                   std::span<const OrthonormalBasis> basesB);

}  // namespace qcorr
