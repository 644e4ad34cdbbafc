#include "qht/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "qht/errors.hpp"
#include "qht/protocol.hpp"

namespace qht {

std::vector<double> default_sigma_grid() {
    std::vector<double> grid;
    grid.reserve(15);
    for (int k = 1; k <= 15; ++k) grid.push_back(k * std::numbers::pi / 90.0);
    return grid;
}

std::vector<double> default_tau_grid() {
    std::vector<double> grid;
    grid.reserve(10);
    // k / 100.0 rounds once, matching the parsed decimals "0.01".."0.1".
    for (int k = 1; k <= 10; ++k) grid.push_back(k / 100.0);
    return grid;
}

const std::vector<double>& ExperimentConfig::active_grid() const {
    return sweep_kind == SweepKind::Sigma ? sigma_grid : tau_grid;
}

void ExperimentConfig::validate() const {
    if (sample_size < 1) throw ConfigError("experiment: sample_size must be >= 1");
    if (pair_counts.empty()) throw ConfigError("experiment: at least one pair count required");
    const int eta = coefficient_count(model_id);
    const int min_pairs = std::max(2, eta - 1);
    for (int r : pair_counts) {
        if (r < min_pairs) {
            std::ostringstream msg;
            msg << "experiment: pair count " << r << " too small for model " << to_string(model_id)
                << " (need >= " << min_pairs << ")";
            throw ConfigError(msg.str());
        }
    }
    for (const auto* grid : {&sigma_grid, &tau_grid}) {
        if (grid->empty()) throw ConfigError("experiment: grids must be nonempty");
        double prev = -1.0;
        for (double g : *grid) {
            if (!(g >= 0.0)) throw ConfigError("experiment: grid values must be >= 0");
            if (g <= prev) throw ConfigError("experiment: grids must be strictly increasing");
            prev = g;
        }
    }
    if (!(fixed_sigma >= 0.0)) throw ConfigError("experiment: fixed_sigma must be >= 0");
    if (!(quench_time > 0.0)) throw ConfigError("experiment: quench_time must be > 0");
}

namespace {

NoiseConfig cell_noise(const ExperimentConfig& cfg, double grid_value) {
    NoiseConfig noise;
    noise.quench_time = cfg.quench_time;
    noise.jitter_mode = cfg.jitter_mode;
    if (cfg.sweep_kind == SweepKind::Sigma) {
        noise.sigma = grid_value;
        noise.delta_tau = 0.0;
    } else {
        noise.sigma = cfg.fixed_sigma;
        noise.delta_tau = grid_value;
    }
    return noise;
}

// Streams are keyed by the grid *value*, so adding or removing other grid
// points leaves a point's sample unchanged.
RandomStream trial_stream(const ExperimentConfig& cfg, double grid_value, int r, int trial_idx) {
    const char* label = cfg.sweep_kind == SweepKind::Sigma ? "sigma-grid" : "tau-grid";
    return RandomStream(cfg.seed)
        .child(label, std::bit_cast<std::uint64_t>(grid_value))
        .child("pairs", static_cast<std::uint64_t>(r))
        .child("trial", static_cast<std::uint64_t>(trial_idx));
}

struct TrialJob {
    std::size_t cell;
    int trial_idx;
    double grid_value;
    int pairs;
};

unsigned resolve_threads(unsigned max_threads, std::size_t n_jobs) {
    unsigned n = max_threads;
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    if (n_jobs < n) n = static_cast<unsigned>(n_jobs);
    return std::max(1u, n);
}

}  // namespace

double run_trial(const ExperimentConfig& cfg, double grid_value, int r, int trial_idx) {
    RandomStream rng = trial_stream(cfg, grid_value, r, trial_idx);

    QuenchTrial trial;
    trial.model = HamiltonianModel::create(
        cfg.model_id, sample_coefficients(coefficient_count(cfg.model_id), rng));
    const int dim = dimension(cfg.model_id);
    trial.states.reserve(r);
    for (int i = 0; i < r; ++i) trial.states.push_back(sample_initial_state(dim, rng));
    trial.noise = cell_noise(cfg, grid_value);

    const EstimationResult est = estimate(build_p_matrix(trial, rng));
    return fidelity(trial.model.alpha, est.alpha_hat);
}

SweepResult run_sweep(const ExperimentConfig& cfg, unsigned max_threads) {
    cfg.validate();

    SweepResult result;
    result.config = cfg;
    auto& pair_counts = result.config.pair_counts;
    std::sort(pair_counts.begin(), pair_counts.end());
    pair_counts.erase(std::unique(pair_counts.begin(), pair_counts.end()), pair_counts.end());

    const std::vector<double>& grid = result.config.active_grid();
    std::vector<TrialJob> jobs;
    for (int r : pair_counts) {
        for (double g : grid) {
            SweepCell cell;
            cell.grid_value = g;
            cell.pairs = r;
            cell.sample_size = result.config.sample_size;
            const std::size_t cell_idx = result.cells.size();
            result.cells.push_back(std::move(cell));
            for (int t = 0; t < result.config.sample_size; ++t) {
                jobs.push_back({cell_idx, t, g, r});
            }
        }
    }

    // Every trial writes to its own slot; aggregation below runs in a fixed
    // order, so the output does not depend on the thread count.
    std::vector<std::vector<double>> fidelities(result.cells.size());
    for (auto& slot : fidelities) slot.resize(result.config.sample_size, 0.0);

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::mutex failure_mutex;
    std::optional<std::string> failure;

    const auto worker = [&] {
        for (;;) {
            const std::size_t k = cursor.fetch_add(1);
            if (k >= jobs.size() || failed.load(std::memory_order_relaxed)) return;
            const TrialJob& job = jobs[k];
            try {
                fidelities[job.cell][job.trial_idx] =
                    run_trial(result.config, job.grid_value, job.pairs, job.trial_idx);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    std::ostringstream msg;
                    msg << "sweep: trial failed (grid value " << job.grid_value << ", pairs "
                        << job.pairs << ", trial " << job.trial_idx << "): " << e.what();
                    failure = msg.str();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    const unsigned n_threads = resolve_threads(max_threads, jobs.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) throw Error(*failure);

    for (std::size_t c = 0; c < result.cells.size(); ++c) {
        SweepCell& cell = result.cells[c];
        const std::vector<double>& f = fidelities[c];
        double sum = 0.0;
        for (double x : f) sum += x;
        const double mean = sum / static_cast<double>(f.size());
        double ssd = 0.0;
        for (double x : f) ssd += (x - mean) * (x - mean);
        cell.mean_fidelity = mean;
        cell.sd = std::sqrt(ssd / static_cast<double>(f.size()));
        if (result.config.keep_trial_fidelities) cell.trial_fidelities = f;
    }
    return result;
}

}  // namespace qht
