#include "qcorr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "qcorr/correlations.hpp"
#include "qcorr/criteria.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/kernels.hpp"
#include "qcorr/pauli_two_qubit.hpp"

namespace qcorr {

namespace {

// Fixed block size decouples the RNG partition from the worker count: block
// b always consumes RngStream(seed, b), so results are thread-count
// invariant.
constexpr std::uint64_t kBlock = 4096;
// Stream ids >= this are reserved for auxiliary draws (candidate frames).
constexpr std::uint64_t kAuxStreamBase = std::uint64_t{1} << 32;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(block_index) for blocks [0, n_blocks) across the pool. The first
// worker exception is rethrown on the caller's thread.
template <typename Fn>
void parallel_blocks(std::uint64_t n_blocks, int threads, Fn&& fn) {
    const int nw = std::min<std::uint64_t>(std::max(1, threads), std::max<std::uint64_t>(1, n_blocks));
    if (nw <= 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w)
        pool.emplace_back([&] {
            for (;;) {
                if (failed.load(std::memory_order_relaxed)) return;
                const std::uint64_t b = next.fetch_add(1);
                if (b >= n_blocks) return;
                try {
                    fn(b);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// ---- detector battery on one two-qubit state (Bloch fast path) ----

struct DetectorBits {
    bool entangled = false;
    double ppt_margin = 0.0;
    bool witness = false;
    bool pearson2 = false;
    bool pearson3 = false;
    bool pearson_prod = false;
    bool condprob = false;
    bool mi2 = false;
    bool mi3 = false;
    bool lur = false;

    bool by_name(const std::string& name) const {
        if (name == "witness") return witness;
        if (name == "pearson2") return pearson2;
        if (name == "pearson3") return pearson3;
        if (name == "pearson_prod") return pearson_prod;
        if (name == "condprob") return condprob;
        if (name == "mi2") return mi2;
        if (name == "mi3") return mi3;
        if (name == "lur") return lur;
        throw contract_error("unknown detector '" + name + "'");
    }
};

const std::vector<std::string>& battery_names() {
    static const std::vector<std::string> names = {"witness", "pearson2", "pearson3",
                                                   "pearson_prod", "condprob", "mi2",
                                                   "mi3", "lur"};
    return names;
}

DetectorBits evaluate_two_qubit(const ComplexMatrix& rho4) {
    using namespace pauli2;
    DetectorBits out;

    const double lo = min_eig_partial_transpose(rho4);
    out.ppt_margin = -lo;
    out.entangled = lo < -1e-10;

    const Bloch b = bloch_of(rho4);
    // Pair order mirrors qubit_pauli_mubs: z, x, y.
    const PairObs pz = pauli_pair_stats(b, 2);
    const PairObs px = pauli_pair_stats(b, 0);
    const PairObs py = pauli_pair_stats(b, 1);

    out.mi2 = pz.I + px.I > 1.0 + kDetectionSlack;
    out.mi3 = pz.I + px.I + py.I > 1.0 + kDetectionSlack;

    if (pz.c_defined && px.c_defined) {
        out.pearson2 = pz.abs_C + px.abs_C > 1.0 + kDetectionSlack;
        out.pearson_prod = pz.abs_C * px.abs_C > 0.25 + kDetectionSlack;
        if (py.c_defined)
            out.pearson3 = pz.abs_C + px.abs_C + py.abs_C > 1.0 + kDetectionSlack;
    }

    if (pz.s_defined && px.s_defined && py.s_defined) {
        double s[3] = {pz.S, px.S, py.S};
        std::sort(s, s + 3);
        const double top2 = s[2] + s[1];
        out.condprob = top2 > 3.0 + kDetectionSlack || top2 < 1.0 - kDetectionSlack;
    }

    const auto w = witness_values(b);
    double wmin = w[0];
    for (double v : w) wmin = std::min(wmin, v);
    out.witness = -wmin > kDetectionSlack;

    const LurParts l = lur_parts(b);
    out.lur = l.lhs > l.rhs + kDetectionSlack;

    return out;
}

TallyMatrix empty_tally(std::vector<std::string> venn_detectors) {
    TallyMatrix t;
    t.venn_detectors = std::move(venn_detectors);
    t.venn.assign(std::size_t{1} << t.venn_detectors.size(), 0);
    t.battery = battery_names();
    t.battery_detected.assign(t.battery.size(), 0);
    t.battery_false_positives.assign(t.battery.size(), 0);
    return t;
}

TallyMatrix run_tally(const MonteCarloSpec& spec, std::vector<std::string> venn_detectors) {
    const std::uint64_t n_blocks = (spec.n + kBlock - 1) / kBlock;
    const int threads = resolve_threads(spec.threads);

    std::vector<TallyMatrix> partials(std::max<std::uint64_t>(1, n_blocks),
                                      empty_tally(venn_detectors));
    parallel_blocks(n_blocks, threads, [&](std::uint64_t blk) {
        TallyMatrix& t = partials[blk];
        RngStream rng(spec.seed, blk);
        const std::uint64_t begin = blk * kBlock;
        const std::uint64_t end = std::min(spec.n, begin + kBlock);
        for (std::uint64_t s = begin; s < end; ++s) {
            const DensityMatrix rho = random_density_matrix(4, rng, spec.ensemble);
            const DetectorBits bits = evaluate_two_qubit(rho.matrix());

            ++t.n_samples;
            std::size_t mask = 0;
            for (std::size_t k = 0; k < t.venn_detectors.size(); ++k)
                if (bits.by_name(t.venn_detectors[k])) mask |= std::size_t{1} << k;
            ++t.venn[mask];

            if (bits.entangled) ++t.n_entangled;
            for (std::size_t k = 0; k < t.battery.size(); ++k) {
                if (!bits.by_name(t.battery[k])) continue;
                if (bits.entangled)
                    ++t.battery_detected[k];
                else
                    ++t.battery_false_positives[k];
            }
        }
    });

    TallyMatrix total = empty_tally(std::move(venn_detectors));
    for (const TallyMatrix& p : partials) total.merge(p);
    return total;
}

}  // namespace

std::uint64_t TallyMatrix::detected_any() const {
    std::uint64_t s = 0;
    for (std::size_t mask = 1; mask < venn.size(); ++mask) s += venn[mask];
    return s;
}

std::uint64_t TallyMatrix::battery_count(const std::string& name) const {
    for (std::size_t i = 0; i < battery.size(); ++i)
        if (battery[i] == name) return battery_detected[i];
    throw contract_error("battery_count: unknown detector '" + name + "'");
}

std::uint64_t TallyMatrix::battery_fp(const std::string& name) const {
    for (std::size_t i = 0; i < battery.size(); ++i)
        if (battery[i] == name) return battery_false_positives[i];
    throw contract_error("battery_fp: unknown detector '" + name + "'");
}

std::vector<std::uint64_t> TallyMatrix::venn_over(const std::vector<std::string>& subset) const {
    std::vector<std::size_t> bit_of;
    for (const std::string& name : subset) {
        const auto it = std::find(venn_detectors.begin(), venn_detectors.end(), name);
        if (it == venn_detectors.end())
            throw contract_error("venn_over: '" + name + "' not in venn set");
        bit_of.push_back(static_cast<std::size_t>(it - venn_detectors.begin()));
    }
    std::vector<std::uint64_t> out(std::size_t{1} << subset.size(), 0);
    for (std::size_t mask = 0; mask < venn.size(); ++mask) {
        std::size_t sub = 0;
        for (std::size_t k = 0; k < bit_of.size(); ++k)
            if (mask & (std::size_t{1} << bit_of[k])) sub |= std::size_t{1} << k;
        out[sub] += venn[mask];
    }
    return out;
}

void TallyMatrix::merge(const TallyMatrix& other) {
    if (other.venn.size() != venn.size() || other.battery.size() != battery.size())
        throw contract_error("TallyMatrix::merge: incompatible shapes");
    n_samples += other.n_samples;
    n_entangled += other.n_entangled;
    for (std::size_t i = 0; i < venn.size(); ++i) venn[i] += other.venn[i];
    for (std::size_t i = 0; i < battery.size(); ++i) {
        battery_detected[i] += other.battery_detected[i];
        battery_false_positives[i] += other.battery_false_positives[i];
    }
}

TallyMatrix run_montecarlo(const MonteCarloSpec& spec) {
    return run_tally(spec, {"witness", "pearson3", "condprob", "mi3"});
}

TallyMatrix run_lur_comparison(const MonteCarloSpec& spec) {
    return run_tally(spec, {"pearson3", "pearson2", "lur"});
}

// ---- sweeps ----

std::vector<double> parse_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw contract_error("grid must be start:end:step");
    double start = 0.0, end = 0.0, step = 0.0;
    try {
        start = std::stod(spec.substr(0, c1));
        end = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        step = std::stod(spec.substr(c2 + 1));
    } catch (const std::exception&) {
        throw contract_error("grid must be numeric start:end:step");
    }
    if (!(step > 0.0) || end < start) throw contract_error("grid requires end >= start, step > 0");
    std::vector<double> grid;
    const int count = static_cast<int>(std::floor((end - start) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) grid.push_back(start + i * step);
    return grid;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    const StateFamily* family = find_family(spec.family);
    if (!family) throw contract_error("unknown family '" + spec.family + "'");
    if (spec.mub_count != 2 && spec.mub_count != 3)
        throw contract_error("mub_count must be 2 or 3");
    if (spec.p_grid.empty()) throw contract_error("empty parameter grid");
    for (double p : spec.p_grid)
        if (!(p >= 0.0 && p <= 1.0)) throw contract_error("grid parameter outside [0,1]");

    std::vector<SweepRow> rows;
    for (double p : spec.p_grid) {
        const BipartiteState s = family->generator(p);
        const int d = s.dA;
        if (spec.mub_count == 3 && d != 2)
            throw contract_error("3-MUB sweep requires a qubit family");
        const MubSet mubs = spec.mub_count == 3
                                ? qubit_pauli_mubs()
                                : MubSet::make({computational_basis(d), fourier_basis(d)});
        const CorrelationReport rep = full_report(s, mubs);

        SweepRow row;
        row.p = p;
        row.I_sum = rep.mi_sum_all();
        row.C_sum = 0.0;
        row.S_sum = 0.0;
        for (const PairStats& ps : rep.pairs) {
            row.C_sum = ps.c_defined ? row.C_sum + ps.abs_C
                                     : std::numeric_limits<double>::quiet_NaN();
            row.S_sum = ps.s_defined ? row.S_sum + ps.S
                                     : std::numeric_limits<double>::quiet_NaN();
        }
        row.mi_threshold = spec.mub_count == 3 ? 1.0 : std::log2(static_cast<double>(d));
        row.pearson_threshold = 1.0;
        row.s_lower = 1.0;
        row.s_upper = static_cast<double>(d) + 1.0;
        const Verdict oracle = ppt_oracle(s);
        row.ppt_margin = oracle.margin;
        row.oracle_entangled = oracle.detected;
        rows.push_back(row);
    }
    return rows;
}

// ---- basis optimization ----

OptimizationMode optimization_mode_from(const std::string& name) {
    if (name == "fixed") return OptimizationMode::fixed;
    if (name == "optimize_second") return OptimizationMode::optimize_second;
    if (name == "optimize_both") return OptimizationMode::optimize_both;
    if (name == "optimize_3mub") return OptimizationMode::optimize_3mub;
    throw contract_error("unknown optimization mode '" + name + "'");
}

std::string to_string(OptimizationMode mode) {
    switch (mode) {
        case OptimizationMode::fixed: return "fixed";
        case OptimizationMode::optimize_second: return "optimize_second";
        case OptimizationMode::optimize_both: return "optimize_both";
        case OptimizationMode::optimize_3mub: return "optimize_3mub";
    }
    return "?";
}

namespace {

struct AxesBatch {
    int n_axes = 2;
    std::size_t count = 0;
    std::vector<double> a;  // [(axis*3 + comp) * count + candidate]
    std::vector<double> b;

    void resize(int axes, std::size_t n) {
        n_axes = axes;
        count = n;
        a.assign(static_cast<std::size_t>(axes) * 3 * n, 0.0);
        b.assign(static_cast<std::size_t>(axes) * 3 * n, 0.0);
    }
    void set(std::vector<double>& side, int axis, std::size_t i, double x, double y, double z) {
        side[(axis * 3 + 0) * count + i] = x;
        side[(axis * 3 + 1) * count + i] = y;
        side[(axis * 3 + 2) * count + i] = z;
    }
    void set_both(int axis, std::size_t i, double x, double y, double z) {
        set(a, axis, i, x, y, z);
        set(b, axis, i, x, y, z);
    }
};

std::array<double, 3> random_direction(RngStream& rng) {
    for (;;) {
        const double x = rng.next_gaussian();
        const double y = rng.next_gaussian();
        const double z = rng.next_gaussian();
        const double n = std::sqrt(x * x + y * y + z * z);
        if (n > 1e-12) return {x / n, y / n, z / n};
    }
}

std::array<std::array<double, 3>, 3> random_frame(RngStream& rng) {
    const auto u = random_direction(rng);
    // Complete u to an orthonormal frame.
    const std::array<double, 3> helper =
        std::abs(u[0]) < 0.9 ? std::array<double, 3>{1.0, 0.0, 0.0}
                             : std::array<double, 3>{0.0, 1.0, 0.0};
    const double dot = helper[0] * u[0] + helper[1] * u[1] + helper[2] * u[2];
    std::array<double, 3> v{helper[0] - dot * u[0], helper[1] - dot * u[1],
                            helper[2] - dot * u[2]};
    const double vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (double& c : v) c /= vn;
    const std::array<double, 3> w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                  u[0] * v[1] - u[1] * v[0]};
    return {u, v, w};
}

AxesBatch build_candidates(const OptimizationSpec& spec) {
    AxesBatch batch;
    const int m = spec.n_directions;
    switch (spec.mode) {
        case OptimizationMode::fixed: {
            if (spec.mub_count != 2 && spec.mub_count != 3)
                throw contract_error("fixed mode: mub_count must be 2 or 3");
            batch.resize(spec.mub_count, 1);
            batch.set_both(0, 0, 0.0, 0.0, 1.0);  // z
            batch.set_both(1, 0, 1.0, 0.0, 0.0);  // x
            if (spec.mub_count == 3) batch.set_both(2, 0, 0.0, 1.0, 0.0);
            break;
        }
        case OptimizationMode::optimize_second: {
            // First observable pinned to z; second scanned over the
            // equatorial circle (phi = 0 recovers x), same on both qubits.
            if (m < 1) throw contract_error("optimize_second: n_directions must be >= 1");
            batch.resize(2, static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                const double phi = M_PI * i / m;
                batch.set_both(0, i, 0.0, 0.0, 1.0);
                batch.set_both(1, i, std::cos(phi), std::sin(phi), 0.0);
            }
            break;
        }
        case OptimizationMode::optimize_both: {
            // First axis swept through the x-z plane (theta = 0 recovers z);
            // second swept over the circle orthogonal to it.
            if (m < 1) throw contract_error("optimize_both: n_directions must be >= 1");
            batch.resize(2, static_cast<std::size_t>(m) * m);
            std::size_t i = 0;
            for (int a = 0; a < m; ++a) {
                const double theta = M_PI * a / m;
                const double nx = std::sin(theta), nz = std::cos(theta);
                for (int c = 0; c < m; ++c, ++i) {
                    const double phi = M_PI * c / m;
                    batch.set_both(0, i, nx, 0.0, nz);
                    batch.set_both(1, i, std::cos(phi) * nz, std::sin(phi),
                                   -std::cos(phi) * nx);
                }
            }
            break;
        }
        case OptimizationMode::optimize_3mub: {
            // Random orthonormal frame per candidate, drawn independently
            // for the two qubits.
            if (m < 1) throw contract_error("optimize_3mub: n_directions must be >= 1");
            batch.resize(3, static_cast<std::size_t>(m));
            RngStream rng(spec.seed, kAuxStreamBase);
            for (int i = 0; i < m; ++i) {
                const auto fa = random_frame(rng);
                const auto fb = random_frame(rng);
                for (int k = 0; k < 3; ++k) {
                    batch.set(batch.a, k, i, fa[k][0], fa[k][1], fa[k][2]);
                    batch.set(batch.b, k, i, fb[k][0], fb[k][1], fb[k][2]);
                }
            }
            break;
        }
    }
    return batch;
}

}  // namespace

OptimizationSummary run_basis_optimization(const OptimizationSpec& spec) {
    if (spec.n_states < 1) throw contract_error("optimization needs n_states >= 1");
    if (spec.hist_bins < 1) throw contract_error("hist_bins must be >= 1");
    const AxesBatch batch = build_candidates(spec);
    const kernels::Ops& ops = kernels::active();

    OptimizationSummary out;
    out.mode = spec.mode;
    out.n_axes = batch.n_axes;
    out.n_candidates = batch.count;
    out.hist.lo = 0.0;
    out.hist.hi = static_cast<double>(batch.n_axes);

    const std::uint64_t n_blocks = (spec.n_states + kBlock - 1) / kBlock;
    const int threads = resolve_threads(spec.threads);

    struct Partial {
        std::uint64_t n_states = 0, n_entangled = 0, detected = 0, false_pos = 0;
        std::vector<std::uint64_t> hist_sep, hist_ent;
    };
    std::vector<Partial> partials(std::max<std::uint64_t>(1, n_blocks));
    for (auto& p : partials) {
        p.hist_sep.assign(spec.hist_bins, 0);
        p.hist_ent.assign(spec.hist_bins, 0);
    }

    parallel_blocks(n_blocks, threads, [&](std::uint64_t blk) {
        Partial& part = partials[blk];
        RngStream rng(spec.seed, blk);
        std::vector<double> stats(batch.count);
        const std::uint64_t begin = blk * kBlock;
        const std::uint64_t end = std::min(spec.n_states, begin + kBlock);
        for (std::uint64_t s = begin; s < end; ++s) {
            const DensityMatrix rho = random_density_matrix(4, rng, spec.ensemble);
            const bool entangled =
                pauli2::min_eig_partial_transpose(rho.matrix()) < -1e-10;
            const pauli2::Bloch b = pauli2::bloch_of(rho.matrix());
            ops.corr_sum_batch(b.T.data(), b.rA.data(), b.rB.data(), batch.n_axes,
                               batch.count, batch.a.data(), batch.b.data(), stats.data());
            double best = 0.0;
            for (double v : stats) best = std::max(best, v);

            ++part.n_states;
            const bool detected = best > 1.0 + kDetectionSlack;
            if (entangled) {
                ++part.n_entangled;
                if (detected) ++part.detected;
            } else if (detected) {
                ++part.false_pos;
            }
            int bin = static_cast<int>(best / out.hist.hi * spec.hist_bins);
            bin = std::clamp(bin, 0, spec.hist_bins - 1);
            ++(entangled ? part.hist_ent : part.hist_sep)[bin];
        }
    });

    out.hist.separable.assign(spec.hist_bins, 0);
    out.hist.entangled.assign(spec.hist_bins, 0);
    for (const Partial& p : partials) {
        out.n_states += p.n_states;
        out.n_entangled += p.n_entangled;
        out.detected_entangled += p.detected;
        out.false_positives += p.false_pos;
        for (int i = 0; i < spec.hist_bins; ++i) {
            out.hist.separable[i] += p.hist_sep[i];
            out.hist.entangled[i] += p.hist_ent[i];
        }
    }
    out.detected_fraction =
        out.n_entangled ? static_cast<double>(out.detected_entangled) / out.n_entangled : 0.0;
    return out;
}

}  // namespace qcorr
