#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qht/experiment.hpp"

namespace qht::cli {

/// Parses one real token: "pi/INT", "INT*pi/INT", or a plain decimal.
std::optional<double> parse_real_token(std::string_view token);

/// Comma-separated list of real tokens.
std::optional<std::vector<double>> parse_real_list(std::string_view text);

/// Comma-separated list of integers.
std::optional<std::vector<int>> parse_int_list(std::string_view text);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// 17-significant-digit decimal (always value-preserving).
std::string format_g17(double value);

/// Header `model,pairs,sigma,delta_tau,mean_fidelity,sd,sample_size,seed`,
/// one row per sweep cell, LF line endings.
void write_csv(std::ostream& out, const SweepResult& result);

/// Resolved configuration as `key = value` lines sorted by key. The target
/// key is written only when `target` is nonempty.
void write_manifest(std::ostream& out, const SweepResult& result, std::string_view out_path,
                    std::string_view target);

void print_summary(std::ostream& out, const SweepResult& result);

/// One published statistic a sweep cell is compared against.
struct ReferenceEntry {
    const char* sigma_label;
    double sigma;
    int pairs;
    double mean;
    double sd;
};

std::span<const ReferenceEntry> table1_reference();
std::span<const ReferenceEntry> table2_reference();

/// Preconfigured sweep behind a `reproduce` target name.
struct ReproducePreset {
    std::string_view name;
    ModelId model;
    SweepKind sweep;
    std::vector<int> pairs;
    int sample_size;
    std::vector<double> sigma_grid;  // empty means the default grid
    bool has_reference;
};

std::span<const ReproducePreset> all_presets();
const ReproducePreset* find_preset(std::string_view target);
ExperimentConfig preset_config(const ReproducePreset& preset, std::uint64_t seed);

/// Command-line entry point; returns the process exit code
/// (0 success, 2 usage or config error, 1 numerical failure).
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qht::cli
