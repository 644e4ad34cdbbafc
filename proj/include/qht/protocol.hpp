#pragma once

#include <limits>
#include <vector>

#include "qht/linalg.hpp"
#include "qht/model.hpp"
#include "qht/noise.hpp"
#include "qht/random.hpp"

namespace qht {

/// One reconstruction problem: a Hamiltonian, r initial states, and the
/// noise applied while recording its measurement data.
struct QuenchTrial {
    HamiltonianModel model;
    std::vector<StateVector> states;  // unit-norm initial states
    NoiseConfig noise;

    int pairs() const { return static_cast<int>(states.size()); }

    /// Throws unless there are at least max(2, eta - 1) states, all of the
    /// model's dimension and unit norm, and the noise config is valid.
    void validate() const;
};

struct EstimationResult {
    RealVector alpha_hat;   // unit norm
    double s_min = 0.0;     // smallest singular value; its square is the residual
    bool degenerate = false;
    double fidelity = std::numeric_limits<double>::quiet_NaN();  // unset until scored
};

/// Haar-random pure state of the given dimension (2, 4, or 8).
StateVector sample_initial_state(int dim, RandomStream& rng);

/// r x eta matrix of expectation-value differences between each initial
/// state and its time-evolved partner. Each basis operator is measured
/// through one fresh perturbation unitary shared by all pairs, and every
/// observation time carries the configured jitter.
RealMatrix build_p_matrix(const QuenchTrial& trial, RandomStream& rng);

/// Coefficient estimate: the unit vector minimizing |p v|.
EstimationResult estimate(const RealMatrix& p);

/// |cos angle(alpha, alpha_hat)|; blind to global sign and scale.
double fidelity(const RealVector& alpha, const RealVector& alpha_hat);

}  // namespace qht
