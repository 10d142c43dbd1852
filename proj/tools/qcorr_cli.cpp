// qcorr: complementary-correlation analysis of bipartite states.
//
// Subcommands: analyze, sweep, montecarlo, lur-compare, optimize.
// Exit codes: 0 success, 2 usage/config error, 3 invalid input data.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/correlations.hpp"
#include "qcorr/criteria.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/experiments.hpp"
#include "qcorr/export.hpp"
#include "qcorr/states.hpp"

namespace {

using namespace qcorr;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBadData = 3;

struct BadInputData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RandomEnsemble ensemble_from(const std::string& name) {
    if (name == "simplex") return RandomEnsemble::SpectrumSimplex;
    if (name == "ginibre") return RandomEnsemble::GinibreHS;
    throw contract_error("unknown ensemble '" + name + "' (expected simplex or ginibre)");
}

// Flat key=value config mirroring the subcommand's long flags. Values from
// the file apply only where the flag was not given on the command line.
using ConfigSetter = std::function<void(const std::string&)>;

void apply_config(const CLI::App* cmd, const std::string& path,
                  const std::map<std::string, ConfigSetter>& setters) {
    if (path.empty()) return;
    std::ifstream f(path);
    if (!f) throw contract_error("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw contract_error("config line " + std::to_string(lineno) +
                                 ": expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        const auto it = setters.find(key);
        if (it == setters.end())
            throw contract_error("config: unknown key '" + key + "'");
        if (cmd->count("--" + key) == 0) it->second(value);
    }
}

template <typename T>
ConfigSetter numeric_setter(T& target) {
    return [&target](const std::string& v) {
        try {
            if constexpr (std::is_unsigned_v<T>)
                target = static_cast<T>(std::stoull(v));
            else
                target = static_cast<T>(std::stoll(v));
        } catch (const std::exception&) {
            throw contract_error("config: bad numeric value '" + v + "'");
        }
    };
}

ConfigSetter string_setter(std::string& target) {
    return [&target](const std::string& v) { target = v; };
}

ExportFormat pick_format(const std::string& explicit_format, const std::string& path) {
    if (!explicit_format.empty()) return export_format_from(explicit_format);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return ExportFormat::json;
    return ExportFormat::csv;
}

// Matrix file: first line d, then d^2 x d^2 entries as "re im" pairs,
// row-major, whitespace-separated.
BipartiteState read_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw contract_error("cannot open matrix file '" + path + "'");
    int d = 0;
    if (!(f >> d)) throw contract_error("matrix file: missing dimension line");
    if (d < 2 || d > 16) throw contract_error("matrix file: d must be in [2,16]");
    const int n = d * d;
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double re = 0.0, im = 0.0;
            if (!(f >> re >> im))
                throw contract_error("matrix file: expected " + std::to_string(2 * n * n) +
                                     " numbers after the dimension");
            m(i, j) = cplx{re, im};
        }
    try {
        DensityMatrix rho = DensityMatrix::from_matrix(std::move(m));
        rho.validate_psd();
        return BipartiteState::make(d, d, std::move(rho));
    } catch (const contract_error& e) {
        throw BadInputData(e.what());
    }
}

ConfigSetter bool_setter(bool& target) {
    return [&target](const std::string& v) {
        if (v == "1" || v == "true")
            target = true;
        else if (v == "0" || v == "false")
            target = false;
        else
            throw contract_error("config: bad boolean value '" + v + "'");
    };
}

struct AnalyzeOptions {
    std::string state;
    std::string matrix_file;
    int d = 2;
    int mubs = 0;  // 0 = auto (3 for qubits, else 2)
    bool json = false;
    std::string config;
};

int run_analyze(const CLI::App* cmd, AnalyzeOptions& opt) {
    apply_config(cmd, opt.config,
                 {{"state", string_setter(opt.state)},
                  {"matrix-file", string_setter(opt.matrix_file)},
                  {"d", numeric_setter(opt.d)},
                  {"mubs", numeric_setter(opt.mubs)},
                  {"json", bool_setter(opt.json)}});
    if (opt.state.empty() == opt.matrix_file.empty())
        throw contract_error("analyze needs exactly one of --state / --matrix-file");
    BipartiteState s = opt.matrix_file.empty() ? named_state(opt.state, opt.d)
                                               : read_matrix_file(opt.matrix_file);
    const int d = s.dA;
    int mubs = opt.mubs == 0 ? (d == 2 ? 3 : 2) : opt.mubs;
    if (mubs == 3 && d != 2) throw contract_error("3 MUBs supported for qubits only");

    const MubSet set = mubs == 3 ? qubit_pauli_mubs()
                                 : MubSet::make({computational_basis(d), fourier_basis(d)});
    const CorrelationReport rep = full_report(s, set);

    std::vector<Verdict> verdicts;
    verdicts.push_back(ppt_oracle(s));
    verdicts.push_back(mi_criterion(rep, d));
    verdicts.push_back(pearson_criterion(rep, 2));
    verdicts.push_back(pearson_product_criterion(rep));
    verdicts.push_back(condprob_criterion(rep, d));
    if (mubs == 3) {
        verdicts.push_back(mi3_criterion(rep));
        verdicts.push_back(pearson_criterion(rep, 3));
    }
    if (d == 2) {
        verdicts.push_back(witness_bank_aggregate(s));
        verdicts.push_back(lur_criterion(s));
    }

    if (opt.json) {
        ordered_json out;
        out["state"] = opt.matrix_file.empty() ? opt.state : opt.matrix_file;
        out["d"] = d;
        out["mub_count"] = mubs;
        ordered_json pairs = ordered_json::array();
        for (const PairStats& p : rep.pairs) {
            ordered_json jp;
            jp["I"] = p.I;
            jp["abs_C"] = p.abs_C;
            jp["c_defined"] = p.c_defined;
            jp["S"] = p.S;
            jp["s_defined"] = p.s_defined;
            jp["H_A"] = p.H_A;
            jp["H_B"] = p.H_B;
            pairs.push_back(std::move(jp));
        }
        out["pairs"] = std::move(pairs);
        out["I_sum"] = rep.mi_sum_all();
        out["C_sum"] = rep.pearson_sum_all();
        out["S_sum"] = rep.s_sum_all();
        ordered_json jv = ordered_json::array();
        for (const Verdict& v : verdicts) {
            ordered_json e;
            e["detector"] = v.detector;
            e["detected"] = v.detected;
            e["margin"] = v.margin;
            e["threshold"] = v.threshold;
            jv.push_back(std::move(e));
        }
        out["verdicts"] = std::move(jv);
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }

    std::printf("state: %s  (d=%d, %d MUBs)\n",
                opt.matrix_file.empty() ? opt.state.c_str() : opt.matrix_file.c_str(), d, mubs);
    std::printf("%-6s %12s %12s %12s\n", "pair", "I", "|C|", "S");
    for (size_t k = 0; k < rep.pairs.size(); ++k) {
        const PairStats& p = rep.pairs[k];
        char cbuf[32] = "undef", sbuf[32] = "undef";
        if (p.c_defined) std::snprintf(cbuf, sizeof cbuf, "%.6f", p.abs_C);
        if (p.s_defined) std::snprintf(sbuf, sizeof sbuf, "%.6f", p.S);
        std::printf("%-6zu %12.6f %12s %12s\n", k, p.I, cbuf, sbuf);
    }
    std::printf("sums:  I=%.6f  |C|=%.6f  S=%.6f\n", rep.mi_sum_all(), rep.pearson_sum_all(),
                rep.s_sum_all());
    std::printf("%-14s %-10s %14s %14s\n", "detector", "verdict", "margin", "threshold");
    for (const Verdict& v : verdicts)
        std::printf("%-14s %-10s %14.6g %14.6g\n", v.detector.c_str(),
                    v.detected ? "entangled" : "-", v.margin, v.threshold);
    return kExitOk;
}

struct OutputOptions {
    std::string output;
    std::string format;
};

void require_output(const OutputOptions& out) {
    if (out.output.empty()) throw contract_error("--output is required");
}

struct SweepOptions {
    std::string family = "werner";
    std::string grid = "0:1:0.01";
    std::vector<std::string> measures;
    int mubs = 3;
    OutputOptions out;
    std::string config;
};

int run_sweep_cmd(const CLI::App* cmd, SweepOptions& opt) {
    std::string measure_csv;
    apply_config(cmd, opt.config,
                 {{"family", string_setter(opt.family)},
                  {"grid", string_setter(opt.grid)},
                  {"measure", string_setter(measure_csv)},
                  {"mubs", numeric_setter(opt.mubs)},
                  {"output", string_setter(opt.out.output)},
                  {"format", string_setter(opt.out.format)}});
    if (!measure_csv.empty()) {
        opt.measures.clear();
        std::stringstream ss(measure_csv);
        std::string item;
        while (std::getline(ss, item, ',')) opt.measures.push_back(item);
    }
    require_output(opt.out);
    SweepSpec spec;
    spec.family = opt.family;
    spec.p_grid = parse_grid(opt.grid);
    spec.mub_count = opt.mubs;
    if (!opt.measures.empty()) {
        spec.measures = {false, false, false};
        for (const std::string& m : opt.measures) {
            if (m == "all") spec.measures = {true, true, true};
            else if (m == "mi") spec.measures.mi = true;
            else if (m == "pearson") spec.measures.pearson = true;
            else if (m == "condprob") spec.measures.condprob = true;
            else throw contract_error("unknown measure '" + m + "'");
        }
    }
    const auto rows = run_sweep(spec);
    const ExportMeta meta{0, rows.size(), "sweep"};
    const ExportFormat f = pick_format(opt.out.format, opt.out.output);
    write_text_file(opt.out.output,
                    f == ExportFormat::csv ? sweep_to_csv(spec, rows)
                                           : sweep_to_json(spec, rows, meta));
    std::printf("sweep %s: %zu rows -> %s\n", spec.family.c_str(), rows.size(),
                opt.out.output.c_str());
    return kExitOk;
}

struct McOptions {
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 42;
    int threads = 0;
    std::string ensemble = "simplex";
    OutputOptions out;
    std::string config;
};

int run_mc_cmd(const CLI::App* cmd, McOptions& opt, bool lur) {
    apply_config(cmd, opt.config,
                 {{"n", numeric_setter(opt.n)},
                  {"seed", numeric_setter(opt.seed)},
                  {"threads", numeric_setter(opt.threads)},
                  {"ensemble", string_setter(opt.ensemble)},
                  {"output", string_setter(opt.out.output)},
                  {"format", string_setter(opt.out.format)}});
    require_output(opt.out);
    MonteCarloSpec spec;
    spec.n = opt.n;
    spec.seed = opt.seed;
    spec.threads = opt.threads;
    spec.ensemble = ensemble_from(opt.ensemble);
    const TallyMatrix tally = lur ? run_lur_comparison(spec) : run_montecarlo(spec);
    const ExportMeta meta{spec.seed, spec.n, lur ? "lur-compare" : "montecarlo"};
    const ExportFormat f = pick_format(opt.out.format, opt.out.output);
    write_text_file(opt.out.output, f == ExportFormat::csv ? tally_to_csv(tally)
                                                           : tally_to_json(tally, meta));
    const double ent_frac =
        tally.n_samples ? static_cast<double>(tally.n_entangled) / tally.n_samples : 0.0;
    std::printf("n=%llu entangled_fraction=%.4f detected_any=%llu -> %s\n",
                static_cast<unsigned long long>(tally.n_samples), ent_frac,
                static_cast<unsigned long long>(tally.detected_any()),
                opt.out.output.c_str());
    if (!lur) {
        const double dp = tally.n_entangled
                              ? static_cast<double>(tally.battery_count("pearson3")) /
                                    tally.n_entangled
                              : 0.0;
        const double dw = tally.n_entangled
                              ? static_cast<double>(tally.battery_count("witness")) /
                                    tally.n_entangled
                              : 0.0;
        std::printf("pearson3=%.4f witness=%.4f (fraction of entangled)\n", dp, dw);
    }
    return kExitOk;
}

struct OptOptions {
    std::uint64_t n = 100'000;
    int directions = 80;
    std::string mode = "fixed";
    int mubs = 3;
    std::uint64_t seed = 42;
    int threads = 0;
    std::string ensemble = "simplex";
    OutputOptions out;
    std::string config;
};

int run_opt_cmd(const CLI::App* cmd, OptOptions& opt) {
    apply_config(cmd, opt.config,
                 {{"n", numeric_setter(opt.n)},
                  {"directions", numeric_setter(opt.directions)},
                  {"mode", string_setter(opt.mode)},
                  {"mubs", numeric_setter(opt.mubs)},
                  {"seed", numeric_setter(opt.seed)},
                  {"threads", numeric_setter(opt.threads)},
                  {"ensemble", string_setter(opt.ensemble)},
                  {"output", string_setter(opt.out.output)},
                  {"format", string_setter(opt.out.format)}});
    require_output(opt.out);
    OptimizationSpec spec;
    spec.n_states = opt.n;
    spec.n_directions = opt.directions;
    spec.mode = optimization_mode_from(opt.mode);
    spec.mub_count = opt.mubs;
    spec.seed = opt.seed;
    spec.threads = opt.threads;
    spec.ensemble = ensemble_from(opt.ensemble);
    const OptimizationSummary summary = run_basis_optimization(spec);
    const ExportMeta meta{spec.seed, spec.n_states, "optimize"};
    const ExportFormat f = pick_format(opt.out.format, opt.out.output);
    write_text_file(opt.out.output, f == ExportFormat::csv
                                        ? optimization_to_csv(summary)
                                        : optimization_to_json(summary, meta));
    std::printf("mode=%s candidates=%llu detected_fraction=%.4f -> %s\n",
                to_string(summary.mode).c_str(),
                static_cast<unsigned long long>(summary.n_candidates),
                summary.detected_fraction, opt.out.output.c_str());
    return kExitOk;
}

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("-o,--output", out.output, "output file");
    cmd->add_option("--format", out.format, "csv or json (default: csv, or by extension)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complementary correlations of bipartite quantum states"};
    app.require_subcommand(1);

    AnalyzeOptions an;
    CLI::App* analyze = app.add_subcommand("analyze", "report correlations and verdicts");
    analyze->add_option("--state", an.state, "catalog state name");
    analyze->add_option("--matrix-file", an.matrix_file, "density matrix file");
    analyze->add_option("--d", an.d, "subsystem dimension for catalog states");
    analyze->add_option("--mubs", an.mubs, "number of MUBs (2 or 3; default auto)");
    analyze->add_flag("--json", an.json, "JSON to stdout");
    analyze->add_option("--config", an.config, "key=value config file");

    SweepOptions sw;
    CLI::App* sweep = app.add_subcommand("sweep", "parametric family sweep");
    sweep->add_option("--family", sw.family, "werner | schmidt | cc_mix | bell_mix");
    sweep->add_option("--grid", sw.grid, "p grid start:end:step");
    sweep->add_option("--measure", sw.measures, "mi | pearson | condprob | all")
        ->delimiter(',');
    sweep->add_option("--mubs", sw.mubs, "2 or 3");
    add_output_options(sweep, sw.out);
    sweep->add_option("--config", sw.config, "key=value config file");

    McOptions mc;
    CLI::App* montecarlo = app.add_subcommand("montecarlo", "detector comparison on random states");
    montecarlo->add_option("--n", mc.n, "sample count");
    montecarlo->add_option("--seed", mc.seed, "RNG seed");
    montecarlo->add_option("--threads", mc.threads, "worker count (0 = auto)");
    montecarlo->add_option("--ensemble", mc.ensemble, "simplex | ginibre");
    add_output_options(montecarlo, mc.out);
    montecarlo->add_option("--config", mc.config, "key=value config file");

    McOptions lc;
    CLI::App* lur = app.add_subcommand("lur-compare", "Pearson vs local-uncertainty detection");
    lur->add_option("--n", lc.n, "sample count");
    lur->add_option("--seed", lc.seed, "RNG seed");
    lur->add_option("--threads", lc.threads, "worker count (0 = auto)");
    lur->add_option("--ensemble", lc.ensemble, "simplex | ginibre");
    add_output_options(lur, lc.out);
    lur->add_option("--config", lc.config, "key=value config file");

    OptOptions op;
    CLI::App* optimize = app.add_subcommand("optimize", "observable-direction optimization");
    optimize->add_option("--n", op.n, "state count");
    optimize->add_option("--directions", op.directions, "candidate direction count per grid");
    optimize->add_option("--mode", op.mode,
                         "fixed | optimize_second | optimize_both | optimize_3mub");
    optimize->add_option("--mubs", op.mubs, "fixed mode: 2 or 3");
    optimize->add_option("--seed", op.seed, "RNG seed");
    optimize->add_option("--threads", op.threads, "worker count (0 = auto)");
    optimize->add_option("--ensemble", op.ensemble, "simplex | ginibre");
    add_output_options(optimize, op.out);
    optimize->add_option("--config", op.config, "key=value config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return run_analyze(analyze, an);
        if (sweep->parsed()) return run_sweep_cmd(sweep, sw);
        if (montecarlo->parsed()) return run_mc_cmd(montecarlo, mc, false);
        if (lur->parsed()) return run_mc_cmd(lur, lc, true);
        if (optimize->parsed()) return run_opt_cmd(optimize, op);
    } catch (const BadInputData& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadData;
    } catch (const contract_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
