#pragma once

#include <cstdint>
#include <vector>

#include "qht/model.hpp"
#include "qht/noise.hpp"

namespace qht {

/// Which noise parameter the sweep walks over. A sigma sweep has no timing
/// jitter; a tau sweep holds sigma at fixed_sigma.
enum class SweepKind { Sigma, Tau };

/// k pi/90 for k = 1..15.
std::vector<double> default_sigma_grid();

/// 0.01 .. 0.10 in steps of 0.01.
std::vector<double> default_tau_grid();

struct ExperimentConfig {
    ModelId model_id = ModelId::Pauli;
    SweepKind sweep_kind = SweepKind::Sigma;
    std::vector<int> pair_counts = {3, 6, 12};
    int sample_size = 100;
    std::vector<double> sigma_grid = default_sigma_grid();
    std::vector<double> tau_grid = default_tau_grid();
    double fixed_sigma = default_sigma_grid().front();  // sigma during tau sweeps
    double quench_time = 1.0;
    JitterMode jitter_mode = JitterMode::PerEntry;
    std::uint64_t seed = 0;
    bool keep_trial_fidelities = false;

    const std::vector<double>& active_grid() const;

    /// Throws ConfigError on empty or non-increasing grids, negative grid
    /// values, sample_size < 1, or pair counts too small for the model.
    void validate() const;
};

/// Fidelity statistics of one (grid value, pair count) cell.
struct SweepCell {
    double grid_value = 0.0;
    int pairs = 0;
    double mean_fidelity = 0.0;
    double sd = 0.0;  // population standard deviation (divisor n)
    int sample_size = 0;
    std::vector<double> trial_fidelities;  // filled only on request
};

struct SweepResult {
    ExperimentConfig config;  // as run, with pair counts sorted and deduplicated
    std::vector<SweepCell> cells;  // ordered by (pairs, grid value)
};

/// Fidelity of a single reconstruction. A pure function of (seed, sweep
/// kind, grid value, pair count, trial index): trials draw from child
/// streams keyed by those values, so one trial's result does not depend on
/// which other grid points, pair counts, or trials are evaluated.
double run_trial(const ExperimentConfig& cfg, double grid_value, int r, int trial_idx);

/// Runs every cell of the sweep. Trials are distributed over worker threads
/// (hardware concurrency by default, capped by max_threads when nonzero);
/// results are bit-identical for any worker count.
SweepResult run_sweep(const ExperimentConfig& cfg, unsigned max_threads = 0);

}  // namespace qht
