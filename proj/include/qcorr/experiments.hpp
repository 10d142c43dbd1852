#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcorr/states.hpp"

namespace qcorr {

struct MeasureSelection {
    bool mi = true;
    bool pearson = true;
    bool condprob = true;
};

struct SweepSpec {
    std::string family = "werner";
    std::vector<double> p_grid;
    int mub_count = 2;  // 3 requires qubits
    MeasureSelection measures;
};

struct SweepRow {
    double p = 0.0;
    double I_sum = 0.0;
    double C_sum = 0.0;  // NaN when a Pearson pair is degenerate
    double S_sum = 0.0;  // NaN when a conditional is undefined
    double mi_threshold = 0.0;
    double pearson_threshold = 1.0;
    double s_lower = 1.0;
    double s_upper = 0.0;
    double ppt_margin = 0.0;
    bool oracle_entangled = false;
};

std::vector<double> parse_grid(const std::string& spec);  // "start:end:step"
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct MonteCarloSpec {
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 42;
    int threads = 0;  // 0 = hardware concurrency
    RandomEnsemble ensemble = RandomEnsemble::SpectrumSimplex;
};

/// Contingency counts from a detector-comparison run. venn[mask] counts
/// samples whose detector bitmask over `venn_detectors` equals mask (bit k =
/// detector k), so the nonzero cells sum to the states detected by at least
/// one detector. The battery lists every evaluated detector with its counts
/// among oracle-entangled states and its PPT-positive detections.
struct TallyMatrix {
    std::uint64_t n_samples = 0;
    std::uint64_t n_entangled = 0;
    std::vector<std::string> venn_detectors;
    std::vector<std::uint64_t> venn;
    std::vector<std::string> battery;
    std::vector<std::uint64_t> battery_detected;
    std::vector<std::uint64_t> battery_false_positives;

    std::uint64_t detected_any() const;
    std::uint64_t battery_count(const std::string& name) const;
    std::uint64_t battery_fp(const std::string& name) const;
    /// Cell counts marginalized onto a subset of the venn detectors.
    std::vector<std::uint64_t> venn_over(const std::vector<std::string>& subset) const;
    void merge(const TallyMatrix& other);
};

/// Venn over {witness, pearson3, condprob, mi3}; battery additionally
/// evaluates pearson2, the Pearson product form, mi2 and lur on every
/// sample.
TallyMatrix run_montecarlo(const MonteCarloSpec& spec);

/// Venn over {pearson3, pearson2, lur}.
TallyMatrix run_lur_comparison(const MonteCarloSpec& spec);

enum class OptimizationMode { fixed, optimize_second, optimize_both, optimize_3mub };
OptimizationMode optimization_mode_from(const std::string& name);
std::string to_string(OptimizationMode mode);

struct OptimizationSpec {
    std::uint64_t n_states = 100'000;
    int n_directions = 80;  // per-grid count (both-mode squares it)
    OptimizationMode mode = OptimizationMode::fixed;
    int mub_count = 2;  // fixed mode only: 2 or 3
    std::uint64_t seed = 42;
    int threads = 0;
    RandomEnsemble ensemble = RandomEnsemble::SpectrumSimplex;
    int hist_bins = 200;
};

struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::uint64_t> separable;
    std::vector<std::uint64_t> entangled;
};

struct OptimizationSummary {
    OptimizationMode mode = OptimizationMode::fixed;
    int n_axes = 2;  // statistic is a sum of this many |C| terms
    std::uint64_t n_candidates = 1;
    std::uint64_t n_states = 0;
    std::uint64_t n_entangled = 0;
    std::uint64_t detected_entangled = 0;
    std::uint64_t false_positives = 0;
    double detected_fraction = 0.0;  // of oracle-entangled states
    Histogram hist;                  // of the maximized statistic, split by oracle verdict
};

OptimizationSummary run_basis_optimization(const OptimizationSpec& spec);

}  // namespace qcorr
