#include "qht/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qht/errors.hpp"

namespace qht {

void QuenchTrial::validate() const {
    noise.validate();
    const int eta = static_cast<int>(model.basis.size());
    if (pairs() < 2) throw ConfigError("trial: at least 2 state pairs required");
    if (pairs() < eta - 1) {
        std::ostringstream msg;
        msg << "trial: " << pairs() << " state pairs cannot determine " << eta << " coefficients";
        throw ConfigError(msg.str());
    }
    const int dim = dimension(model.id);
    for (const StateVector& psi : states) {
        if (psi.size() != dim) {
            throw DimensionError("trial: state dimension does not match the model");
        }
        if (std::abs(psi.norm() - 1.0) > 1e-12) {
            throw ConfigError("trial: initial states must have unit norm");
        }
    }
}

StateVector sample_initial_state(int dim, RandomStream& rng) {
    if (dim != 2 && dim != 4 && dim != 8) {
        throw ConfigError("sample_initial_state: dim must be 2, 4, or 8");
    }
    StateVector psi(dim);
    double norm2 = 0.0;
    do {
        for (int k = 0; k < dim; ++k) {
            const double re = rng.normal();
            const double im = rng.normal();
            psi(k) = Complex(re, im);
        }
        norm2 = psi.squaredNorm();
    } while (norm2 < 1e-100);
    return psi / std::sqrt(norm2);
}

RealMatrix build_p_matrix(const QuenchTrial& trial, RandomStream& rng) {
    trial.validate();
    const int eta = static_cast<int>(trial.model.basis.size());
    const int r = trial.pairs();
    const int n_qubits = qubit_count(trial.model.id);

    // One fresh apparatus perturbation per operator, shared by every pair.
    std::vector<ComplexMatrix> distorted;
    distorted.reserve(eta);
    for (int j = 0; j < eta; ++j) {
        const ComplexMatrix q = perturbation_matrix(n_qubits, trial.noise.sigma, rng);
        distorted.push_back(distort(trial.model.basis[j], q));
    }

    const HermitianEig eig = hermitian_eig(assemble_hamiltonian(trial.model));

    RealMatrix p(r, eta);
    for (int i = 0; i < r; ++i) {
        const StateVector& initial = trial.states[i];
        double row_time = 0.0;
        if (trial.noise.jitter_mode == JitterMode::PerPair) {
            row_time = jitter_time(trial.noise, rng);
        }
        for (int j = 0; j < eta; ++j) {
            const double t = trial.noise.jitter_mode == JitterMode::PerEntry
                                 ? jitter_time(trial.noise, rng)
                                 : row_time;
            const StateVector evolved = evolve(eig, t, initial);
            p(i, j) = expectation(distorted[j], initial) - expectation(distorted[j], evolved);
        }
    }
    return p;
}

EstimationResult estimate(const RealMatrix& p) {
    const MinSingularVector msv = min_right_singular_vector(p);
    EstimationResult result;
    result.alpha_hat = msv.vector;
    result.s_min = msv.singular_value;
    result.degenerate = msv.degenerate;
    return result;
}

double fidelity(const RealVector& alpha, const RealVector& alpha_hat) {
    if (alpha.size() != alpha_hat.size()) {
        throw DimensionError("fidelity: coefficient vectors have different lengths");
    }
    const double na = alpha.norm();
    const double nb = alpha_hat.norm();
    if (na < 1e-300 || nb < 1e-300) {
        throw ZeroVectorError("fidelity: zero-norm coefficient vector");
    }
    return std::min(1.0, std::abs(alpha.dot(alpha_hat)) / (na * nb));
}

}  // namespace qht
