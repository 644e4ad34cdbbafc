#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qht {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Entrywise Hermiticity test: max_ij |m - m^H| <= tol.
bool is_hermitian(const ComplexMatrix& m, double tol);

/// Entrywise unitarity test: max_ij |m^H m - I| <= tol.
bool is_unitary(const ComplexMatrix& m, double tol);

/// Tensor product with the usual block layout:
/// out(i*b.rows()+k, j*b.cols()+l) = a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEig {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // orthonormal columns, matching order
};

/// Eigendecomposition of a Hermitian matrix (Hermiticity checked at 1e-10).
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// e^{-i h t} psi, exact through the eigendecomposition of h.
StateVector evolve(const ComplexMatrix& h, double t, const StateVector& psi);
StateVector evolve(const HermitianEig& h, double t, const StateVector& psi);

/// Re <psi|m|psi> for Hermitian m. The imaginary part is a pure rounding
/// artifact and must stay below 1e-10, else ImaginaryResidueError.
double expectation(const ComplexMatrix& m, const StateVector& psi);

struct MinSingularVector {
    RealVector vector;      // unit norm, deterministically oriented
    double singular_value;  // smallest singular value, >= 0
    bool degenerate;        // smallest two singular values within 1e-9 relative
};

/// Right singular vector for the smallest singular value of p, computed from
/// the eigendecomposition of p^T p. The sign is fixed so that the first
/// component with magnitude above 1e-12 is positive.
MinSingularVector min_right_singular_vector(const RealMatrix& p);

}  // namespace qht
