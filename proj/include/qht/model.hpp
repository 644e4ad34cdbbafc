#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qht/linalg.hpp"
#include "qht/random.hpp"

namespace qht {

/// The supported Hamiltonian families.
enum class ModelId { Sic, Polarization, Pauli, Tfim2, Rf3 };

inline constexpr ModelId kAllModels[] = {
    ModelId::Sic, ModelId::Polarization, ModelId::Pauli, ModelId::Tfim2, ModelId::Rf3,
};

int qubit_count(ModelId id);
int coefficient_count(ModelId id);
int dimension(ModelId id);

std::string_view to_string(ModelId id);
std::optional<ModelId> parse_model_id(std::string_view name);

/// Pauli matrix sigma_k for k in {1, 2, 3}, standard convention
/// (sigma_2 = [[0, -i], [i, 0]]).
ComplexMatrix pauli(int k);

/// Operator basis of the given family, in its documented order.
///
///   sic           projectors onto the three single-qubit SIC states
///   polarization  projectors onto |0>, |+>, |+i>
///   pauli         sigma_1, sigma_2, sigma_3
///   tfim2         sigma_1 x I, I x sigma_1, sigma_3 x sigma_3
///   rf3           sigma_1 on each of three qubits, then sigma_3 sigma_3 on
///                 pairs (1,2), (2,3), (1,3)
std::vector<ComplexMatrix> build_basis(ModelId id);

/// Unit coefficient vector, uniform on the (eta-1)-sphere.
RealVector sample_coefficients(int eta, RandomStream& rng);

/// One family together with a concrete coefficient vector.
struct HamiltonianModel {
    ModelId id = ModelId::Pauli;
    std::vector<ComplexMatrix> basis;
    RealVector alpha;

    /// Builds the basis and validates: alpha has length coefficient_count(id)
    /// and unit norm within 1e-12; every basis operator is Hermitian within
    /// 1e-12; the basis is linearly independent (smallest eigenvalue of the
    /// Hilbert-Schmidt Gram matrix above 1e-6).
    static HamiltonianModel create(ModelId id, RealVector alpha);
};

/// H = sum_j alpha_j basis_j.
ComplexMatrix assemble_hamiltonian(const HamiltonianModel& model);

}  // namespace qht
