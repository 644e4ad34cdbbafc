#include "qht/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qht/errors.hpp"

namespace qht {
namespace {

const Complex kImag(0.0, 1.0);

ComplexMatrix identity2() {
    return ComplexMatrix::Identity(2, 2);
}

ComplexMatrix projector(const StateVector& v) {
    return v * v.adjoint();
}

// (|0> + sqrt(2) e^{2 pi i j / 3} |1>) / sqrt(3), j = 0, 1, 2
StateVector sic_state(int j) {
    StateVector v(2);
    v(0) = Complex(1.0 / std::sqrt(3.0), 0.0);
    v(1) = std::sqrt(2.0 / 3.0) * std::polar(1.0, 2.0 * std::numbers::pi * j / 3.0);
    return v;
}

StateVector polarization_state(int j) {
    StateVector v(2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (j) {
        case 0: v << 1.0, 0.0; break;
        case 1: v << inv_sqrt2, inv_sqrt2; break;
        default: v << inv_sqrt2, kImag * inv_sqrt2; break;
    }
    return v;
}

}  // namespace

int qubit_count(ModelId id) {
    switch (id) {
        case ModelId::Sic:
        case ModelId::Polarization:
        case ModelId::Pauli:
            return 1;
        case ModelId::Tfim2:
            return 2;
        case ModelId::Rf3:
            return 3;
    }
    throw ConfigError("qubit_count: unknown model id");
}

int coefficient_count(ModelId id) {
    return id == ModelId::Rf3 ? 6 : 3;
}

int dimension(ModelId id) {
    return 1 << qubit_count(id);
}

std::string_view to_string(ModelId id) {
    switch (id) {
        case ModelId::Sic: return "sic";
        case ModelId::Polarization: return "polarization";
        case ModelId::Pauli: return "pauli";
        case ModelId::Tfim2: return "tfim2";
        case ModelId::Rf3: return "rf3";
    }
    throw ConfigError("to_string: unknown model id");
}

std::optional<ModelId> parse_model_id(std::string_view name) {
    for (ModelId id : kAllModels) {
        if (name == to_string(id)) return id;
    }
    return std::nullopt;
}

ComplexMatrix pauli(int k) {
    ComplexMatrix m(2, 2);
    switch (k) {
        case 1: m << 0.0, 1.0, 1.0, 0.0; break;
        case 2: m << 0.0, -kImag, kImag, 0.0; break;
        case 3: m << 1.0, 0.0, 0.0, -1.0; break;
        default: throw ConfigError("pauli: index must be 1, 2, or 3");
    }
    return m;
}

std::vector<ComplexMatrix> build_basis(ModelId id) {
    std::vector<ComplexMatrix> basis;
    switch (id) {
        case ModelId::Sic:
            for (int j = 0; j < 3; ++j) basis.push_back(projector(sic_state(j)));
            break;
        case ModelId::Polarization:
            for (int j = 0; j < 3; ++j) basis.push_back(projector(polarization_state(j)));
            break;
        case ModelId::Pauli:
            for (int k = 1; k <= 3; ++k) basis.push_back(pauli(k));
            break;
        case ModelId::Tfim2:
            basis.push_back(kron(pauli(1), identity2()));
            basis.push_back(kron(identity2(), pauli(1)));
            basis.push_back(kron(pauli(3), pauli(3)));
            break;
        case ModelId::Rf3: {
            const ComplexMatrix i2 = identity2();
            basis.push_back(kron(kron(pauli(1), i2), i2));
            basis.push_back(kron(kron(i2, pauli(1)), i2));
            basis.push_back(kron(kron(i2, i2), pauli(1)));
            basis.push_back(kron(kron(pauli(3), pauli(3)), i2));
            basis.push_back(kron(kron(i2, pauli(3)), pauli(3)));
            basis.push_back(kron(kron(pauli(3), i2), pauli(3)));
            break;
        }
    }
    return basis;
}

RealVector sample_coefficients(int eta, RandomStream& rng) {
    if (eta < 2) throw ConfigError("sample_coefficients: eta must be >= 2");
    RealVector alpha(eta);
    double norm = 0.0;
    do {
        for (int j = 0; j < eta; ++j) alpha(j) = rng.normal();
        norm = alpha.norm();
    } while (norm < 1e-100);
    return alpha / norm;
}

HamiltonianModel HamiltonianModel::create(ModelId id, RealVector alpha) {
    HamiltonianModel model;
    model.id = id;
    model.basis = build_basis(id);
    model.alpha = std::move(alpha);

    const int eta = coefficient_count(id);
    if (model.alpha.size() != eta) {
        std::ostringstream msg;
        msg << "model: expected " << eta << " coefficients for " << to_string(id) << ", got "
            << model.alpha.size();
        throw DimensionError(msg.str());
    }
    if (std::abs(model.alpha.norm() - 1.0) > 1e-12) {
        throw ConfigError("model: coefficient vector must have unit norm within 1e-12");
    }
    for (const ComplexMatrix& op : model.basis) {
        if (!is_hermitian(op, 1e-12)) {
            throw NotHermitianError("model: basis operator is not Hermitian within 1e-12");
        }
    }

    // Hilbert-Schmidt Gram matrix; singular would make coefficients unidentifiable.
    RealMatrix gram(eta, eta);
    for (int i = 0; i < eta; ++i)
        for (int j = 0; j < eta; ++j)
            gram(i, j) = (model.basis[i].adjoint() * model.basis[j]).trace().real();
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(gram);
    if (solver.info() != Eigen::Success || solver.eigenvalues()(0) <= 1e-6) {
        throw ConfigError("model: basis operators are not linearly independent");
    }
    return model;
}

ComplexMatrix assemble_hamiltonian(const HamiltonianModel& model) {
    const int dim = dimension(model.id);
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (int j = 0; j < static_cast<int>(model.basis.size()); ++j) {
        h += model.alpha(j) * model.basis[j];
    }
    return h;
}

}  // namespace qht
