#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "qht/errors.hpp"
#include "qht/experiment.hpp"

using qht::ExperimentConfig;
using qht::ModelId;
using qht::SweepKind;
using qht::SweepResult;

TEST_CASE("default grids have the documented values") {
    const auto sigma = qht::default_sigma_grid();
    REQUIRE(sigma.size() == 15);
    for (int k = 1; k <= 15; ++k) CHECK(sigma[k - 1] == k * std::numbers::pi / 90.0);

    const auto tau = qht::default_tau_grid();
    REQUIRE(tau.size() == 10);
    for (int k = 1; k <= 10; ++k) CHECK(tau[k - 1] == k / 100.0);
}

TEST_CASE("config validation rejects malformed sweeps") {
    ExperimentConfig ok;
    CHECK_NOTHROW(ok.validate());

    ExperimentConfig bad = ok;
    bad.sample_size = 0;
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);

    bad = ok;
    bad.pair_counts.clear();
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);

    bad = ok;
    bad.model_id = ModelId::Rf3;
    bad.pair_counts = {3};
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);
    try {
        bad.validate();
    } catch (const qht::ConfigError& e) {
        CHECK(std::string(e.what()).find("rf3") != std::string::npos);
    }

    bad = ok;
    bad.sigma_grid = {0.2, 0.1};
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);

    bad = ok;
    bad.sigma_grid = {0.1, 0.1};
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);

    bad = ok;
    bad.sweep_kind = SweepKind::Tau;
    bad.tau_grid = {-0.01, 0.02};
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);

    bad = ok;
    bad.fixed_sigma = -1.0;
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);

    bad = ok;
    bad.quench_time = 0.0;
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);
}

TEST_CASE("a trial is a pure function of its coordinates") {
    ExperimentConfig cfg;
    cfg.model_id = ModelId::Pauli;
    cfg.seed = 1;
    const double g = qht::default_sigma_grid().front();

    const double first = qht::run_trial(cfg, g, 3, 0);
    CHECK(qht::run_trial(cfg, g, 3, 0) == first);

    // Fields that do not identify the trial must not influence it.
    ExperimentConfig other = cfg;
    other.sample_size = 7;
    other.pair_counts = {3};
    other.sigma_grid = {g};
    other.keep_trial_fidelities = true;
    CHECK(qht::run_trial(other, g, 3, 0) == first);

    CHECK(qht::run_trial(cfg, g, 3, 1) != first);
    CHECK(qht::run_trial(cfg, g, 6, 0) != first);

    ExperimentConfig reseeded = cfg;
    reseeded.seed = 2;
    CHECK(qht::run_trial(reseeded, g, 3, 0) != first);
}

TEST_CASE("trial fidelities replay the published anchor values") {
    // Frozen from the implementation; guards the full deterministic chain
    // from seed through estimation.
    ExperimentConfig cfg;
    cfg.model_id = ModelId::Pauli;
    cfg.seed = 1;
    const double g = qht::default_sigma_grid().front();
    CHECK(qht::run_trial(cfg, g, 3, 0) ==
          doctest::Approx(0.99948351761193754).epsilon(1e-12));
    CHECK(qht::run_trial(cfg, g, 3, 7) ==
          doctest::Approx(0.99996682362688305).epsilon(1e-12));

    ExperimentConfig tau_cfg;
    tau_cfg.model_id = ModelId::Tfim2;
    tau_cfg.sweep_kind = SweepKind::Tau;
    tau_cfg.seed = 11;
    CHECK(qht::run_trial(tau_cfg, 0.05, 3, 0) ==
          doctest::Approx(0.99384952531504744).epsilon(1e-12));
}

TEST_CASE("sweep cells aggregate their own trials") {
    ExperimentConfig cfg;
    cfg.model_id = ModelId::Pauli;
    cfg.sigma_grid = {std::numbers::pi / 90.0, std::numbers::pi / 10.0};
    cfg.pair_counts = {3};
    cfg.sample_size = 25;
    cfg.seed = 3;
    cfg.keep_trial_fidelities = true;

    const SweepResult result = qht::run_sweep(cfg);
    REQUIRE(result.cells.size() == 2);
    for (const auto& cell : result.cells) {
        REQUIRE(static_cast<int>(cell.trial_fidelities.size()) == 25);
        CHECK(cell.sample_size == 25);
        double sum = 0.0;
        for (int i = 0; i < 25; ++i) {
            const double f = qht::run_trial(cfg, cell.grid_value, cell.pairs, i);
            CHECK(cell.trial_fidelities[i] == f);
            sum += f;
        }
        const double mean = sum / 25.0;
        CHECK(cell.mean_fidelity == doctest::Approx(mean).epsilon(1e-12));
        double var = 0.0;
        for (double f : cell.trial_fidelities) var += (f - mean) * (f - mean);
        CHECK(cell.sd == doctest::Approx(std::sqrt(var / 25.0)).epsilon(1e-9));
        CHECK(cell.sd <= 0.5 + 1e-9);
    }
    CHECK(result.cells[0].grid_value < result.cells[1].grid_value);
}

TEST_CASE("sweep results do not depend on the worker count") {
    ExperimentConfig cfg;
    cfg.model_id = ModelId::Tfim2;
    cfg.sigma_grid = {std::numbers::pi / 45.0};
    cfg.pair_counts = {3, 6};
    cfg.sample_size = 16;
    cfg.seed = 4;

    const SweepResult serial = qht::run_sweep(cfg, 1);
    const SweepResult parallel = qht::run_sweep(cfg, 4);
    const SweepResult defaulted = qht::run_sweep(cfg);
    REQUIRE(serial.cells.size() == parallel.cells.size());
    REQUIRE(serial.cells.size() == defaulted.cells.size());
    for (size_t i = 0; i < serial.cells.size(); ++i) {
        CHECK(serial.cells[i].mean_fidelity == parallel.cells[i].mean_fidelity);
        CHECK(serial.cells[i].sd == parallel.cells[i].sd);
        CHECK(serial.cells[i].mean_fidelity == defaulted.cells[i].mean_fidelity);
        CHECK(serial.cells[i].sd == defaulted.cells[i].sd);
    }
}

TEST_CASE("grid points do not influence each other") {
    ExperimentConfig full;
    full.model_id = ModelId::Pauli;
    full.sigma_grid = {std::numbers::pi / 90.0, std::numbers::pi / 45.0,
                       std::numbers::pi / 30.0};
    full.pair_counts = {3};
    full.sample_size = 10;
    full.seed = 5;

    ExperimentConfig single = full;
    single.sigma_grid = {std::numbers::pi / 45.0};

    const SweepResult whole = qht::run_sweep(full);
    const SweepResult alone = qht::run_sweep(single);
    REQUIRE(whole.cells.size() == 3);
    REQUIRE(alone.cells.size() == 1);
    CHECK(whole.cells[1].mean_fidelity == alone.cells[0].mean_fidelity);
    CHECK(whole.cells[1].sd == alone.cells[0].sd);
}

TEST_CASE("pair counts are sorted and deduplicated") {
    ExperimentConfig cfg;
    cfg.model_id = ModelId::Pauli;
    cfg.sigma_grid = {0.1};
    cfg.pair_counts = {12, 3, 3, 6};
    cfg.sample_size = 2;
    cfg.seed = 6;

    const SweepResult result = qht::run_sweep(cfg);
    CHECK(result.config.pair_counts == std::vector<int>{3, 6, 12});
    REQUIRE(result.cells.size() == 3);
    CHECK(result.cells[0].pairs == 3);
    CHECK(result.cells[1].pairs == 6);
    CHECK(result.cells[2].pairs == 12);
}

TEST_CASE("zero noise yields perfect statistics") {
    ExperimentConfig cfg;
    cfg.model_id = ModelId::Sic;
    cfg.sigma_grid = {0.0};
    cfg.pair_counts = {2};
    cfg.sample_size = 20;
    cfg.seed = 7;

    const SweepResult result = qht::run_sweep(cfg);
    REQUIRE(result.cells.size() == 1);
    CHECK(result.cells[0].mean_fidelity >= 1.0 - 1e-8);
    CHECK(result.cells[0].sd < 1e-8);
}

TEST_CASE("aggregate statistics replay the published anchor") {
    ExperimentConfig cfg;
    cfg.model_id = ModelId::Pauli;
    cfg.sigma_grid = {qht::default_sigma_grid().front()};
    cfg.pair_counts = {3};
    cfg.sample_size = 100;
    cfg.seed = 1;

    const SweepResult result = qht::run_sweep(cfg);
    REQUIRE(result.cells.size() == 1);
    CHECK(result.cells[0].mean_fidelity > 0.90);
    CHECK(result.cells[0].mean_fidelity ==
          doctest::Approx(0.99916858892123683).epsilon(1e-12));
    CHECK(result.cells[0].sd == doctest::Approx(0.00096438221183920867).epsilon(1e-9));
}

TEST_CASE("jitter granularity controls whether rows conserve energy") {
    // A row whose entries share one observation time satisfies P alpha = 0
    // exactly even when that time jitters, so reconstruction stays perfect.
    // Independent per-entry times mix different moments into one row and
    // break the zero residual.
    ExperimentConfig cfg;
    cfg.model_id = ModelId::Pauli;
    cfg.sweep_kind = SweepKind::Tau;
    cfg.tau_grid = {0.05};
    cfg.fixed_sigma = 0.0;
    cfg.pair_counts = {3};
    cfg.sample_size = 10;
    cfg.seed = 8;
    CHECK(&cfg.active_grid() == &cfg.tau_grid);

    cfg.jitter_mode = qht::JitterMode::PerPair;
    const SweepResult shared = qht::run_sweep(cfg);
    CHECK(shared.cells[0].mean_fidelity >= 1.0 - 1e-8);

    cfg.jitter_mode = qht::JitterMode::PerEntry;
    const SweepResult independent = qht::run_sweep(cfg);
    CHECK(independent.cells[0].mean_fidelity < 1.0 - 1e-6);
}
