#include "qht/linalg.hpp"

#include <cmath>
#include <sstream>

#include "qht/errors.hpp"

namespace qht {
namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kImagResidueTol = 1e-10;
constexpr double kDegenerateRelGap = 1e-9;
constexpr double kSignComponentFloor = 1e-12;

}  // namespace

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const Eigen::Index n = m.rows();
    return (m.adjoint() * m - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
    if (!is_hermitian(m, kHermitianTol)) {
        throw NotHermitianError("hermitian_eig: matrix is not Hermitian within 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian_eig: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

StateVector evolve(const HermitianEig& h, double t, const StateVector& psi) {
    if (h.eigenvectors.rows() != psi.size()) {
        throw DimensionError("evolve: Hamiltonian and state dimensions differ");
    }
    // Project onto the eigenbasis, advance each mode's phase, project back.
    StateVector coeffs = h.eigenvectors.adjoint() * psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs(k) *= std::polar(1.0, -h.eigenvalues(k) * t);
    }
    return h.eigenvectors * coeffs;
}

StateVector evolve(const ComplexMatrix& h, double t, const StateVector& psi) {
    if (h.cols() != psi.size()) {
        throw DimensionError("evolve: Hamiltonian and state dimensions differ");
    }
    return evolve(hermitian_eig(h), t, psi);
}

double expectation(const ComplexMatrix& m, const StateVector& psi) {
    if (m.cols() != psi.size()) {
        throw DimensionError("expectation: operator and state dimensions differ");
    }
    if (!is_hermitian(m, kHermitianTol)) {
        throw NotHermitianError("expectation: operator is not Hermitian within 1e-10");
    }
    const Complex value = psi.dot(m * psi);
    if (std::abs(value.imag()) > kImagResidueTol) {
        std::ostringstream msg;
        msg << "expectation: imaginary residue " << value.imag() << " exceeds 1e-10";
        throw ImaginaryResidueError(msg.str());
    }
    return value.real();
}

MinSingularVector min_right_singular_vector(const RealMatrix& p) {
    if (p.cols() < 2) {
        throw DimensionError("min_right_singular_vector: need at least 2 columns");
    }
    if (!p.allFinite()) {
        throw ConfigError("min_right_singular_vector: matrix has non-finite entries");
    }
    const RealMatrix gram = p.transpose() * p;
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw Error("min_right_singular_vector: eigensolver did not converge");
    }
    // Rounding can push tiny eigenvalues of p^T p slightly negative.
    const double s0 = std::sqrt(std::max(solver.eigenvalues()(0), 0.0));
    const double s1 = std::sqrt(std::max(solver.eigenvalues()(1), 0.0));

    RealVector v = solver.eigenvectors().col(0);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > kSignComponentFloor) {
            if (v(i) < 0.0) v = -v;
            break;
        }
    }
    return {v, s0, (s1 - s0) <= kDegenerateRelGap * s1};
}

}  // namespace qht
