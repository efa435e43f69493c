#pragma once

#include "qcorr/state.hpp"

namespace qcorr {

/// Binary entropy in bits, H(s) = -s log2 s - (1-s) log2(1-s).
/// Throws std::domain_error outside [0,1].
double binary_entropy(double s);

/// Von Neumann entropy in bits. Eigenvalues in [-1e-8, 0) are clamped to 0;
/// anything below -1e-8 raises std::domain_error.
double von_neumann_entropy(const TwoQubitDensity& rho);

/// Uhlmann fidelity F(rho,sigma) = {Tr[(sqrt(rho) sigma sqrt(rho))^(1/2)]}^2,
/// clamped to [0,1]. Throws std::domain_error on non-PSD input.
double fidelity(const TwoQubitDensity& rho, const TwoQubitDensity& sigma);

/// Unnormalized trace norm ||rho - sigma||_1 = Tr sqrt((rho-sigma)^2).
double trace_distance(const TwoQubitDensity& rho, const TwoQubitDensity& sigma);

/// Squared Hilbert-Schmidt norm ||rho - sigma||_2^2 = Tr[(rho-sigma)^2].
double hs_norm_sq(const TwoQubitDensity& rho, const TwoQubitDensity& sigma);

/// Quantum relative entropy S(rho||sigma) in bits. Returns +infinity when
/// support(rho) is not contained in support(sigma).
double relative_entropy(const TwoQubitDensity& rho, const TwoQubitDensity& sigma);

namespace detail {

/// Hermitian square root via eigendecomposition; eigenvalues within -1e-10 of
/// zero are clamped to 0, anything lower raises std::domain_error.
Matrix4c hermitian_sqrt(const Matrix4c& m);

/// Entropy (bits) of a Hermitian PSD matrix from its eigenvalues.
double entropy_bits(const Eigen::VectorXd& eigenvalues);

Matrix2c partial_trace_b(const Matrix4c& m);
Matrix2c partial_trace_a(const Matrix4c& m);

/// Fidelity with a precomputed sqrt(rho); hot path of the CQ searches.
double fidelity_with_sqrt(const Matrix4c& sqrt_rho, const Matrix4c& sigma);

void require_hermitian(const Matrix4c& m, const char* what);

}  // namespace detail

}  // namespace qcorr
