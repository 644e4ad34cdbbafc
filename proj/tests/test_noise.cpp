#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qht/errors.hpp"
#include "qht/model.hpp"
#include "qht/noise.hpp"
#include "qht/random.hpp"

using qht::Complex;
using qht::ComplexMatrix;
using qht::NoiseConfig;
using qht::RandomStream;

TEST_CASE("noise config validation") {
    NoiseConfig ok;
    ok.sigma = 0.1;
    ok.delta_tau = 0.02;
    CHECK_NOTHROW(ok.validate());

    NoiseConfig bad = ok;
    bad.sigma = -1e-9;
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);

    bad = ok;
    bad.quench_time = 0.0;
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);

    bad = ok;
    bad.delta_tau = -0.5;
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);

    bad = ok;
    bad.sigma = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(bad.validate(), qht::ConfigError);
}

TEST_CASE("euler rotation at zero angles is the identity") {
    const ComplexMatrix u = qht::euler_unitary(0.0, 0.0, 0.0);
    CHECK((u - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("euler rotation composes the three propagators") {
    // Rz(w1) Ry(w2) Rz(w3) with Rk(w) = e^{-i w sigma_k / 2}.
    RandomStream rng(31);
    for (int i = 0; i < 20; ++i) {
        const double w1 = 3.0 * rng.normal();
        const double w2 = 3.0 * rng.normal();
        const double w3 = 3.0 * rng.normal();
        const ComplexMatrix got = qht::euler_unitary(w1, w2, w3);
        const ComplexMatrix want = oracle::propagator(0.5 * qht::pauli(3), w1) *
                                   oracle::propagator(0.5 * qht::pauli(2), w2) *
                                   oracle::propagator(0.5 * qht::pauli(3), w3);
        CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("euler rotation by pi about y flips the axes") {
    const ComplexMatrix u = qht::euler_unitary(0.0, std::numbers::pi, 0.0);
    ComplexMatrix want(2, 2);
    want << 0.0, -1.0,  //
        1.0, 0.0;
    CHECK((u - want).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("random apparatus rotations are unitary") {
    RandomStream rng(32);
    for (int i = 0; i < 1000; ++i) {
        CHECK(qht::is_unitary(qht::random_unitary_2(std::numbers::pi / 10.0, rng), 1e-12));
    }
    for (int n : {1, 2, 3}) {
        const ComplexMatrix q = qht::perturbation_matrix(n, std::numbers::pi / 10.0, rng);
        CHECK(q.rows() == (1 << n));
        CHECK(qht::is_unitary(q, 1e-12));
    }
}

TEST_CASE("zero-sigma apparatus is exact") {
    RandomStream rng(33);
    CHECK((qht::random_unitary_2(0.0, rng) - ComplexMatrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    CHECK((qht::perturbation_matrix(3, 0.0, rng) - ComplexMatrix::Identity(8, 8))
              .cwiseAbs()
              .maxCoeff() < 1e-15);
}

TEST_CASE("apparatus rotations concentrate near the identity for small sigma") {
    RandomStream rng(34);
    double acc = 0.0;
    const int n = 500;
    for (int i = 0; i < n; ++i) {
        acc += (qht::random_unitary_2(1e-4, rng) - ComplexMatrix::Identity(2, 2))
                   .cwiseAbs()
                   .maxCoeff();
    }
    CHECK(acc / n < 1e-3);
}

TEST_CASE("perturbation matrix is the per-qubit tensor product in draw order") {
    const double sigma = 0.3;
    RandomStream whole(35);
    const ComplexMatrix q = qht::perturbation_matrix(3, sigma, whole);

    RandomStream parts(35);
    const ComplexMatrix u1 = qht::random_unitary_2(sigma, parts);
    const ComplexMatrix u2 = qht::random_unitary_2(sigma, parts);
    const ComplexMatrix u3 = qht::random_unitary_2(sigma, parts);
    const ComplexMatrix want = oracle::kron(oracle::kron(u1, u2), u3);
    CHECK((q - want).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("distortion conjugates by the apparatus") {
    RandomStream rng(36);
    const ComplexMatrix m = qht::build_basis(qht::ModelId::Tfim2)[2];
    const ComplexMatrix q = qht::perturbation_matrix(2, 0.4, rng);
    const ComplexMatrix distorted = qht::distort(m, q);

    CHECK(qht::is_hermitian(distorted, 1e-12));
    CHECK(distorted.trace().real() == doctest::Approx(m.trace().real()).epsilon(1e-12));
    CHECK((qht::distort(m, ComplexMatrix::Identity(4, 4)) - m).cwiseAbs().maxCoeff() == 0.0);

    const auto before = qht::hermitian_eig(m).eigenvalues;
    const auto after = qht::hermitian_eig(distorted).eigenvalues;
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("distortion validates its inputs") {
    const ComplexMatrix id4 = ComplexMatrix::Identity(4, 4);
    ComplexMatrix skew = ComplexMatrix::Zero(4, 4);
    skew(0, 1) = Complex(0.0, 1.0);
    CHECK_THROWS_AS(qht::distort(skew, id4), qht::NotHermitianError);
    CHECK_THROWS_AS(qht::distort(id4, 1.1 * id4), qht::NotUnitaryError);
    CHECK_THROWS_AS(qht::distort(ComplexMatrix::Identity(2, 2), id4), qht::DimensionError);
}

TEST_CASE("jittered observation times follow the configured normal") {
    NoiseConfig cfg;
    cfg.quench_time = 1.0;
    cfg.delta_tau = 0.05;
    RandomStream rng(37);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = qht::jitter_time(cfg, rng);
        sum += t;
        sumsq += t * t;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sumsq / n - mean * mean);
    CHECK(std::abs(mean - 1.0) < 0.001);
    CHECK(std::abs(sd - 0.05) < 0.002);
}

TEST_CASE("zero jitter returns the quench time exactly") {
    NoiseConfig cfg;
    cfg.quench_time = 0.37;
    RandomStream rng(38);
    for (int i = 0; i < 100; ++i) CHECK(qht::jitter_time(cfg, rng) == 0.37);
}

TEST_CASE("non-positive jitter draws clamp to the time floor") {
    NoiseConfig cfg;
    cfg.quench_time = 0.01;
    cfg.delta_tau = 100.0;
    RandomStream rng(39);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = qht::jitter_time(cfg, rng);
        REQUIRE(t > 0.0);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    CHECK(lo == 1e-6 * 0.01);  // about half of all draws hit the clamp
    CHECK(hi > 1.0);
}

TEST_CASE("the clamp consumes exactly one draw") {
    NoiseConfig cfg;
    cfg.quench_time = 1e-9;
    cfg.delta_tau = 10.0;
    RandomStream a(40), b(40);
    qht::jitter_time(cfg, a);  // certainly clamped or not; either way one draw
    const double next_a = a.normal();
    b.normal();
    CHECK(next_a == b.normal());
}
