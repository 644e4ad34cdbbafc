#include "qht/noise.hpp"

#include <cmath>

#include "qht/errors.hpp"

namespace qht {

void NoiseConfig::validate() const {
    if (!(sigma >= 0.0)) throw ConfigError("noise: sigma must be >= 0");
    if (!(quench_time > 0.0)) throw ConfigError("noise: quench_time must be > 0");
    if (!(delta_tau >= 0.0)) throw ConfigError("noise: delta_tau must be >= 0");
}

ComplexMatrix euler_unitary(double w1, double w2, double w3) {
    const auto phase = [](double a) { return Complex(std::cos(a), std::sin(a)); };
    const double c = std::cos(w2 / 2.0);
    const double s = std::sin(w2 / 2.0);
    ComplexMatrix u(2, 2);
    u(0, 0) = c * phase(-(w1 + w3) / 2.0);
    u(0, 1) = -s * phase((w3 - w1) / 2.0);
    u(1, 0) = s * phase(-(w3 - w1) / 2.0);
    u(1, 1) = c * phase((w1 + w3) / 2.0);
    return u;
}

ComplexMatrix random_unitary_2(double sigma, RandomStream& rng) {
    if (!(sigma >= 0.0)) throw ConfigError("random_unitary_2: sigma must be >= 0");
    const double w1 = sigma * rng.normal();
    const double w2 = sigma * rng.normal();
    const double w3 = sigma * rng.normal();
    return euler_unitary(w1, w2, w3);
}

ComplexMatrix perturbation_matrix(int n_qubits, double sigma, RandomStream& rng) {
    if (n_qubits < 1) throw ConfigError("perturbation_matrix: n_qubits must be >= 1");
    ComplexMatrix q = random_unitary_2(sigma, rng);
    for (int k = 1; k < n_qubits; ++k) {
        q = kron(q, random_unitary_2(sigma, rng));
    }
    return q;
}

ComplexMatrix distort(const ComplexMatrix& m, const ComplexMatrix& q) {
    if (m.rows() != q.rows() || m.cols() != q.cols()) {
        throw DimensionError("distort: operator and perturbation dimensions differ");
    }
    if (!is_hermitian(m, 1e-10)) {
        throw NotHermitianError("distort: operator is not Hermitian within 1e-10");
    }
    if (!is_unitary(q, 1e-10)) {
        throw NotUnitaryError("distort: perturbation is not unitary within 1e-10");
    }
    return q * m * q.adjoint();
}

double jitter_time(const NoiseConfig& cfg, RandomStream& rng) {
    cfg.validate();
    const double t = cfg.quench_time + cfg.delta_tau * rng.normal();
    // Clamp instead of resampling so exactly one draw is consumed.
    return t > 0.0 ? t : 1e-6 * cfg.quench_time;
}

}  // namespace qht
