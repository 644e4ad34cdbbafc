#include "qht/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "qht/errors.hpp"
#include "qht/version.hpp"

namespace qht::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<long long> parse_int_token(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

const char* sweep_name(SweepKind kind) {
    return kind == SweepKind::Sigma ? "sigma" : "tau";
}

const char* jitter_name(JitterMode mode) {
    return mode == JitterMode::PerEntry ? "entry" : "pair";
}

}  // namespace

std::optional<double> parse_real_token(std::string_view token) {
    const std::string_view s = trim(token);
    if (s.empty()) return std::nullopt;
    const std::size_t pi_pos = s.find("pi");
    if (pi_pos != std::string_view::npos) {
        long long num = 1;
        const std::string_view head = trim(s.substr(0, pi_pos));
        if (!head.empty()) {
            if (head.back() != '*') return std::nullopt;
            const auto parsed = parse_int_token(head.substr(0, head.size() - 1));
            if (!parsed || *parsed <= 0) return std::nullopt;
            num = *parsed;
        }
        const std::string_view tail = trim(s.substr(pi_pos + 2));
        if (tail.empty() || tail.front() != '/') return std::nullopt;
        const auto den = parse_int_token(tail.substr(1));
        if (!den || *den <= 0) return std::nullopt;
        return (static_cast<double>(num) * kPi) / static_cast<double>(*den);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::vector<double>> parse_real_list(std::string_view text) {
    std::vector<double> values;
    for (std::string_view part : split(text, ',')) {
        const auto value = parse_real_token(part);
        if (!value) return std::nullopt;
        values.push_back(*value);
    }
    if (values.empty()) return std::nullopt;
    return values;
}

std::optional<std::vector<int>> parse_int_list(std::string_view text) {
    std::vector<int> values;
    for (std::string_view part : split(text, ',')) {
        const auto value = parse_int_token(part);
        if (!value || *value < INT_MIN || *value > INT_MAX) return std::nullopt;
        values.push_back(static_cast<int>(*value));
    }
    if (values.empty()) return std::nullopt;
    return values;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_g17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return std::string(buf);
}

void write_csv(std::ostream& out, const SweepResult& result) {
    const ExperimentConfig& cfg = result.config;
    out << "model,pairs,sigma,delta_tau,mean_fidelity,sd,sample_size,seed\n";
    for (const SweepCell& cell : result.cells) {
        const double sigma =
            cfg.sweep_kind == SweepKind::Sigma ? cell.grid_value : cfg.fixed_sigma;
        const double delta_tau = cfg.sweep_kind == SweepKind::Sigma ? 0.0 : cell.grid_value;
        out << to_string(cfg.model_id) << ',' << cell.pairs << ',' << format_double(sigma) << ','
            << format_double(delta_tau) << ',' << format_double(cell.mean_fidelity) << ','
            << format_double(cell.sd) << ',' << cell.sample_size << ',' << cfg.seed << '\n';
    }
}

void write_manifest(std::ostream& out, const SweepResult& result, std::string_view out_path,
                    std::string_view target) {
    const ExperimentConfig& cfg = result.config;
    const auto join_reals = [](const std::vector<double>& values) {
        std::string joined;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) joined += ',';
            joined += format_g17(values[i]);
        }
        return joined;
    };
    std::string pairs;
    for (std::size_t i = 0; i < cfg.pair_counts.size(); ++i) {
        if (i) pairs += ',';
        pairs += std::to_string(cfg.pair_counts[i]);
    }

    std::vector<std::pair<std::string, std::string>> entries;
    entries.emplace_back("fixed_sigma", format_g17(cfg.fixed_sigma));
    entries.emplace_back("jitter_mode", jitter_name(cfg.jitter_mode));
    entries.emplace_back("model", std::string(to_string(cfg.model_id)));
    entries.emplace_back("out", std::string(out_path));
    entries.emplace_back("pair_counts", pairs);
    entries.emplace_back("quench_time", format_g17(cfg.quench_time));
    entries.emplace_back("sample_size", std::to_string(cfg.sample_size));
    entries.emplace_back("seed", std::to_string(cfg.seed));
    entries.emplace_back("sigma_grid", join_reals(cfg.sigma_grid));
    entries.emplace_back("sweep", sweep_name(cfg.sweep_kind));
    entries.emplace_back("tau_grid", join_reals(cfg.tau_grid));
    entries.emplace_back("timestamp_utc", utc_timestamp());
    entries.emplace_back("tool_version", kVersion);
    if (!target.empty()) entries.emplace_back("target", std::string(target));
    std::sort(entries.begin(), entries.end());
    for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
}

void print_summary(std::ostream& out, const SweepResult& result) {
    const ExperimentConfig& cfg = result.config;
    out << "model " << to_string(cfg.model_id) << ", sweep " << sweep_name(cfg.sweep_kind)
        << ", sample size " << cfg.sample_size << ", seed " << cfg.seed << "\n";
    char line[160];
    std::snprintf(line, sizeof(line), "%5s  %12s  %12s  %13s  %13s\n", "pairs", "sigma",
                  "delta_tau", "mean_fidelity", "sd");
    out << line;
    for (const SweepCell& cell : result.cells) {
        const double sigma =
            cfg.sweep_kind == SweepKind::Sigma ? cell.grid_value : cfg.fixed_sigma;
        const double delta_tau = cfg.sweep_kind == SweepKind::Sigma ? 0.0 : cell.grid_value;
        std::snprintf(line, sizeof(line), "%5d  %12.6f  %12.6f  %13.9f  %13.9f\n", cell.pairs,
                      sigma, delta_tau, cell.mean_fidelity, cell.sd);
        out << line;
    }
}

std::span<const ReferenceEntry> table1_reference() {
    static const ReferenceEntry rows[] = {
        {"pi/90", 1 * kPi / 90.0, 3, 0.94, 0.13},
        {"pi/90", 1 * kPi / 90.0, 6, 0.94, 0.16},
        {"pi/90", 1 * kPi / 90.0, 12, 0.88, 0.21},
        {"pi/45", 2 * kPi / 90.0, 3, 0.92, 0.16},
        {"pi/45", 2 * kPi / 90.0, 6, 0.90, 0.18},
        {"pi/45", 2 * kPi / 90.0, 12, 0.87, 0.20},
        {"pi/30", 3 * kPi / 90.0, 3, 0.85, 0.21},
        {"pi/30", 3 * kPi / 90.0, 6, 0.86, 0.21},
        {"pi/30", 3 * kPi / 90.0, 12, 0.85, 0.21},
    };
    return rows;
}

std::span<const ReferenceEntry> table2_reference() {
    static const ReferenceEntry rows[] = {
        {"pi/90", 1 * kPi / 90.0, 6, 0.83, 0.08},
        {"pi/90", 1 * kPi / 90.0, 12, 0.956, 0.024},
        {"pi/45", 2 * kPi / 90.0, 6, 0.82, 0.09},
        {"pi/45", 2 * kPi / 90.0, 12, 0.91, 0.06},
        {"pi/30", 3 * kPi / 90.0, 6, 0.79, 0.15},
        {"pi/30", 3 * kPi / 90.0, 12, 0.88, 0.09},
        {"2*pi/45", 4 * kPi / 90.0, 6, 0.68, 0.18},
        {"2*pi/45", 4 * kPi / 90.0, 12, 0.84, 0.13},
        {"pi/18", 5 * kPi / 90.0, 6, 0.67, 0.18},
        {"pi/18", 5 * kPi / 90.0, 12, 0.81, 0.17},
        {"pi/15", 6 * kPi / 90.0, 6, 0.59, 0.17},
        {"pi/15", 6 * kPi / 90.0, 12, 0.79, 0.17},
        {"7*pi/90", 7 * kPi / 90.0, 6, 0.56, 0.18},
        {"7*pi/90", 7 * kPi / 90.0, 12, 0.69, 0.17},
        {"4*pi/45", 8 * kPi / 90.0, 6, 0.56, 0.19},
        {"4*pi/45", 8 * kPi / 90.0, 12, 0.63, 0.18},
        {"pi/10", 9 * kPi / 90.0, 6, 0.57, 0.19},
        {"pi/10", 9 * kPi / 90.0, 12, 0.59, 0.19},
    };
    return rows;
}

std::span<const ReproducePreset> all_presets() {
    static const std::vector<ReproducePreset> list = [] {
        std::vector<double> table1_grid;
        for (int k = 1; k <= 3; ++k) table1_grid.push_back(k * kPi / 90.0);
        std::vector<double> table2_grid;
        for (int k = 1; k <= 9; ++k) table2_grid.push_back(k * kPi / 90.0);
        std::vector<ReproducePreset> v;
        v.push_back({"fig1", ModelId::Sic, SweepKind::Sigma, {3, 6, 12}, 100, {}, false});
        v.push_back({"fig2", ModelId::Polarization, SweepKind::Sigma, {3, 6, 12}, 100, {}, false});
        v.push_back({"fig3", ModelId::Pauli, SweepKind::Sigma, {3, 6, 12}, 100, {}, false});
        v.push_back({"fig4", ModelId::Tfim2, SweepKind::Sigma, {3, 6, 12}, 100, {}, false});
        v.push_back({"fig5", ModelId::Tfim2, SweepKind::Tau, {3, 12}, 100, {}, false});
        v.push_back({"fig6", ModelId::Rf3, SweepKind::Sigma, {6, 12}, 25, {}, false});
        v.push_back({"fig7", ModelId::Rf3, SweepKind::Tau, {6, 12}, 25, {}, false});
        v.push_back({"table1", ModelId::Tfim2, SweepKind::Sigma, {3, 6, 12}, 100,
                     std::move(table1_grid), true});
        v.push_back({"table2", ModelId::Rf3, SweepKind::Sigma, {6, 12}, 25,
                     std::move(table2_grid), true});
        return v;
    }();
    return list;
}

const ReproducePreset* find_preset(std::string_view target) {
    for (const ReproducePreset& preset : all_presets()) {
        if (preset.name == target) return &preset;
    }
    return nullptr;
}

ExperimentConfig preset_config(const ReproducePreset& preset, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.model_id = preset.model;
    cfg.sweep_kind = preset.sweep;
    cfg.pair_counts = preset.pairs;
    cfg.sample_size = preset.sample_size;
    if (!preset.sigma_grid.empty()) cfg.sigma_grid = preset.sigma_grid;
    cfg.seed = seed;
    return cfg;
}

namespace {

const SweepCell* find_cell(const SweepResult& result, int pairs, double grid_value) {
    for (const SweepCell& cell : result.cells) {
        if (cell.pairs == pairs && std::abs(cell.grid_value - grid_value) <= 1e-15) {
            return &cell;
        }
    }
    return nullptr;
}

void print_comparison(std::ostream& out, const SweepResult& result,
                      std::span<const ReferenceEntry> reference) {
    char line[200];
    std::snprintf(line, sizeof(line), "%9s  %5s  %9s  %9s  %9s  %9s  %9s  %9s\n", "sigma",
                  "pairs", "mean", "ref_mean", "diff", "sd", "ref_sd", "diff");
    out << line;
    for (const ReferenceEntry& entry : reference) {
        const SweepCell* cell = find_cell(result, entry.pairs, entry.sigma);
        if (!cell) continue;
        std::snprintf(line, sizeof(line), "%9s  %5d  %9.4f  %9.3f  %9.4f  %9.4f  %9.3f  %9.4f\n",
                      entry.sigma_label, entry.pairs, cell->mean_fidelity, entry.mean,
                      std::abs(cell->mean_fidelity - entry.mean), cell->sd, entry.sd,
                      std::abs(cell->sd - entry.sd));
        out << line;
    }
}

void write_outputs(const SweepResult& result, const std::string& csv_path,
                   std::string_view target) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw ConfigError("cannot open output file: " + csv_path);
    write_csv(csv, result);
    csv.close();
    if (!csv) throw ConfigError("failed writing output file: " + csv_path);

    const std::string manifest_path = csv_path + ".manifest";
    std::ofstream manifest(manifest_path, std::ios::binary);
    if (!manifest) throw ConfigError("cannot open output file: " + manifest_path);
    write_manifest(manifest, result, csv_path, target);
    manifest.close();
    if (!manifest) throw ConfigError("failed writing output file: " + manifest_path);
}

struct SweepArgs {
    std::string model;
    std::string sweep = "sigma";
    std::string pairs = "3,6,12";
    int sample_size = 100;
    bool sample_size_set = false;
    std::string sigma_grid;
    std::string tau_grid;
    std::string fixed_sigma;
    std::string quench_time;
    std::string jitter_mode = "entry";
    std::uint64_t seed = 0;
    std::string out_path;
};

int do_sweep(const SweepArgs& args, unsigned max_threads, std::ostream& out, std::ostream& err) {
    const auto model = parse_model_id(args.model);
    if (!model) {
        err << "error: unknown model '" << args.model
            << "' (valid: sic, polarization, pauli, tfim2, rf3)\n";
        return 2;
    }

    ExperimentConfig cfg;
    cfg.model_id = *model;
    if (args.sweep == "sigma") {
        cfg.sweep_kind = SweepKind::Sigma;
    } else if (args.sweep == "tau") {
        cfg.sweep_kind = SweepKind::Tau;
    } else {
        err << "error: unknown sweep kind '" << args.sweep << "' (valid: sigma, tau)\n";
        return 2;
    }

    const auto pairs = parse_int_list(args.pairs);
    if (!pairs) {
        err << "error: --pairs must be a comma list of integers\n";
        return 2;
    }
    cfg.pair_counts = *pairs;
    cfg.sample_size =
        args.sample_size_set ? args.sample_size : (*model == ModelId::Rf3 ? 25 : 100);

    if (!args.sigma_grid.empty()) {
        const auto grid = parse_real_list(args.sigma_grid);
        if (!grid) {
            err << "error: --sigma-grid must be a comma list of reals (pi literals allowed)\n";
            return 2;
        }
        cfg.sigma_grid = *grid;
    }
    if (!args.tau_grid.empty()) {
        const auto grid = parse_real_list(args.tau_grid);
        if (!grid) {
            err << "error: --tau-grid must be a comma list of reals (pi literals allowed)\n";
            return 2;
        }
        cfg.tau_grid = *grid;
    }
    if (!args.fixed_sigma.empty()) {
        const auto value = parse_real_token(args.fixed_sigma);
        if (!value) {
            err << "error: --fixed-sigma must be a real (pi literals allowed)\n";
            return 2;
        }
        cfg.fixed_sigma = *value;
    }
    if (!args.quench_time.empty()) {
        const auto value = parse_real_token(args.quench_time);
        if (!value) {
            err << "error: --quench-time must be a real (pi literals allowed)\n";
            return 2;
        }
        cfg.quench_time = *value;
    }
    if (args.jitter_mode == "entry") {
        cfg.jitter_mode = JitterMode::PerEntry;
    } else if (args.jitter_mode == "pair") {
        cfg.jitter_mode = JitterMode::PerPair;
    } else {
        err << "error: unknown jitter mode '" << args.jitter_mode << "' (valid: entry, pair)\n";
        return 2;
    }
    cfg.seed = args.seed;

    const SweepResult result = run_sweep(cfg, max_threads);
    if (!args.out_path.empty()) {
        write_outputs(result, args.out_path, "");
    }
    print_summary(out, result);
    if (!args.out_path.empty()) {
        out << "csv: " << args.out_path << "\nmanifest: " << args.out_path << ".manifest\n";
    }
    return 0;
}

int do_reproduce(const std::string& target, std::uint64_t seed, const std::string& out_dir,
                 unsigned max_threads, std::ostream& out, std::ostream& err) {
    const ReproducePreset* preset = find_preset(target);
    if (!preset) {
        err << "error: unknown target '" << target << "' (valid:";
        for (const ReproducePreset& p : all_presets()) err << ' ' << p.name;
        err << ")\n";
        return 2;
    }

    const ExperimentConfig cfg = preset_config(*preset, seed);
    const SweepResult result = run_sweep(cfg, max_threads);

    std::string csv_path = out_dir.empty() ? std::string(".") : out_dir;
    if (csv_path.back() != '/') csv_path += '/';
    csv_path += preset->name;
    csv_path += ".csv";
    write_outputs(result, csv_path, preset->name);

    print_summary(out, result);
    if (preset->has_reference) {
        out << "\ncomparison against published values\n";
        print_comparison(out, result,
                         preset->name == "table1" ? table1_reference() : table2_reference());
    }
    out << "csv: " << csv_path << "\nmanifest: " << csv_path << ".manifest\n";
    return 0;
}

}  // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "Hamiltonian reconstruction from quantum quench data under rotation and timing noise"};
    app.require_subcommand(1);

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a fidelity sweep over a noise grid");
    sweep_cmd->add_option("--model", sweep_args.model,
                          "Hamiltonian family: sic, polarization, pauli, tfim2, rf3")
        ->required();
    sweep_cmd->add_option("--sweep", sweep_args.sweep, "Swept parameter: sigma or tau");
    sweep_cmd->add_option("--pairs", sweep_args.pairs, "Comma list of state-pair counts");
    CLI::Option* sample_opt = sweep_cmd->add_option(
        "--sample-size", sweep_args.sample_size,
        "Hamiltonians per grid point (default 100; 25 for rf3)");
    sweep_cmd->add_option("--sigma-grid", sweep_args.sigma_grid,
                          "Comma list of sigma values; pi literals like pi/90 allowed");
    sweep_cmd->add_option("--tau-grid", sweep_args.tau_grid,
                          "Comma list of delta-tau values for tau sweeps");
    sweep_cmd->add_option("--fixed-sigma", sweep_args.fixed_sigma,
                          "Sigma held fixed during tau sweeps (default pi/90)");
    sweep_cmd->add_option("--quench-time", sweep_args.quench_time,
                          "Nominal evolution time T (default 1)");
    sweep_cmd->add_option("--jitter-mode", sweep_args.jitter_mode,
                          "Observation-time draws per 'entry' or per 'pair'");
    sweep_cmd->add_option("--seed", sweep_args.seed, "Root RNG seed");
    sweep_cmd->add_option("--out", sweep_args.out_path,
                          "CSV output path (omit to print the summary only)");

    std::string target;
    std::uint64_t reproduce_seed = 1;
    std::string out_dir = ".";
    CLI::App* reproduce_cmd =
        app.add_subcommand("reproduce", "Run a preconfigured sweep and export its CSV");
    reproduce_cmd
        ->add_option("--target", target,
                     "One of fig1..fig7, table1, table2")
        ->required();
    reproduce_cmd->add_option("--seed", reproduce_seed, "Root RNG seed");
    reproduce_cmd->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    sweep_args.sample_size_set = sample_opt->count() > 0;

    unsigned max_threads = 0;
    if (const char* env = std::getenv("QUENCH_HT_THREADS")) {
        const auto parsed = parse_int_token(env);
        if (!parsed || *parsed < 1 || *parsed > 1000000) {
            err << "error: QUENCH_HT_THREADS must be a positive integer\n";
            return 2;
        }
        max_threads = static_cast<unsigned>(*parsed);
    }

    try {
        if (sweep_cmd->parsed()) {
            return do_sweep(sweep_args, max_threads, out, err);
        }
        return do_reproduce(target, reproduce_seed, out_dir, max_threads, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qht::cli
