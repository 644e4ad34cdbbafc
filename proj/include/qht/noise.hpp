#pragma once

#include "qht/linalg.hpp"
#include "qht/random.hpp"

namespace qht {

/// Granularity of the timing jitter: an independent observation-time draw
/// for every measured expectation value, or one draw per state pair shared
/// across that pair's whole row.
enum class JitterMode { PerEntry, PerPair };

struct NoiseConfig {
    double sigma = 0.0;        // Euler-angle standard deviation, radians
    double quench_time = 1.0;  // nominal evolution time T
    double delta_tau = 0.0;    // timing-jitter standard deviation
    JitterMode jitter_mode = JitterMode::PerEntry;

    /// Throws ConfigError on sigma < 0, quench_time <= 0, or delta_tau < 0.
    void validate() const;
};

/// ZYZ Euler rotation Rz(w1) Ry(w2) Rz(w3).
ComplexMatrix euler_unitary(double w1, double w2, double w3);

/// Single-qubit unitary whose three Euler angles are drawn from N(0, sigma).
ComplexMatrix random_unitary_2(double sigma, RandomStream& rng);

/// Tensor product of n_qubits independent random_unitary_2 draws, first draw
/// acting on the leftmost qubit.
ComplexMatrix perturbation_matrix(int n_qubits, double sigma, RandomStream& rng);

/// q m q^H: the operator m as implemented by a miscalibrated apparatus q.
ComplexMatrix distort(const ComplexMatrix& m, const ComplexMatrix& q);

/// Observation time drawn from N(quench_time, delta_tau); non-positive draws
/// are clamped to 1e-6 * quench_time.
double jitter_time(const NoiseConfig& cfg, RandomStream& rng);

}  // namespace qht
