#include "qcorr/functionals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcorr {

namespace detail {

void require_hermitian(const Matrix4c& m, const char* what) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::domain_error(std::string(what) + ": input is not Hermitian");
}

double entropy_bits(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues[i];
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return s;
}

Matrix4c hermitian_sqrt(const Matrix4c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m);
  Eigen::Vector4d ev = es.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (ev[i] < -1e-10)
      throw std::domain_error("hermitian_sqrt: matrix is not PSD");
    ev[i] = std::sqrt(std::max(ev[i], 0.0));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix2c partial_trace_b(const Matrix4c& m) {
  Matrix2c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return out;
}

Matrix2c partial_trace_a(const Matrix4c& m) {
  Matrix2c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out(i, j) = m(i, j) + m(i + 2, j + 2);
  return out;
}

double fidelity_with_sqrt(const Matrix4c& sqrt_rho, const Matrix4c& sigma) {
  const Matrix4c inner = sqrt_rho * sigma * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(inner, Eigen::EigenvaluesOnly);
  double root_sum = 0.0;
  for (int i = 0; i < 4; ++i)
    root_sum += std::sqrt(std::max(es.eigenvalues()[i], 0.0));
  const double f = root_sum * root_sum;
  return std::min(1.0, std::max(0.0, f));
}

}  // namespace detail

double binary_entropy(double s) {
  if (s < 0.0 || s > 1.0)
    throw std::domain_error("binary_entropy: argument outside [0,1]");
  double h = 0.0;
  if (s > 0.0) h -= s * std::log2(s);
  if (s < 1.0) h -= (1.0 - s) * std::log2(1.0 - s);
  return h;
}

double von_neumann_entropy(const TwoQubitDensity& rho) {
  detail::require_hermitian(rho.matrix(), "von_neumann_entropy");
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho.matrix(),
                                             Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -1e-8)
      throw std::domain_error("von_neumann_entropy: negative eigenvalue");
    if (ev[i] < 0.0) ev[i] = 0.0;
  }
  return detail::entropy_bits(ev);
}

double fidelity(const TwoQubitDensity& rho, const TwoQubitDensity& sigma) {
  detail::require_hermitian(rho.matrix(), "fidelity");
  detail::require_hermitian(sigma.matrix(), "fidelity");
  if (rho.min_eigenvalue() < -1e-10 || sigma.min_eigenvalue() < -1e-10)
    throw std::domain_error("fidelity: input is not positive semidefinite");
  return detail::fidelity_with_sqrt(detail::hermitian_sqrt(rho.matrix()),
                                    sigma.matrix());
}

double trace_distance(const TwoQubitDensity& rho, const TwoQubitDensity& sigma) {
  detail::require_hermitian(rho.matrix(), "trace_distance");
  detail::require_hermitian(sigma.matrix(), "trace_distance");
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho.matrix() - sigma.matrix(),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double hs_norm_sq(const TwoQubitDensity& rho, const TwoQubitDensity& sigma) {
  detail::require_hermitian(rho.matrix(), "hs_norm_sq");
  detail::require_hermitian(sigma.matrix(), "hs_norm_sq");
  return (rho.matrix() - sigma.matrix()).squaredNorm();
}

double relative_entropy(const TwoQubitDensity& rho, const TwoQubitDensity& sigma) {
  detail::require_hermitian(rho.matrix(), "relative_entropy");
  detail::require_hermitian(sigma.matrix(), "relative_entropy");
  Eigen::SelfAdjointEigenSolver<Matrix4c> er(rho.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(sigma.matrix());

  constexpr double kKernelTol = 1e-12;
  double value = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double p = std::max(er.eigenvalues()[i], 0.0);
    if (p > 1e-15) value += p * std::log2(p);
  }
  for (int j = 0; j < 4; ++j) {
    const double q = es.eigenvalues()[j];
    // weight of rho on this sigma eigenvector
    double w = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double p = std::max(er.eigenvalues()[i], 0.0);
      if (p <= 1e-15) continue;
      const std::complex<double> ov =
          er.eigenvectors().col(i).dot(es.eigenvectors().col(j));
      w += p * std::norm(ov);
    }
    if (q <= kKernelTol) {
      if (w > kKernelTol) return std::numeric_limits<double>::infinity();
      continue;
    }
    value -= w * std::log2(q);
  }
  return value;
}

}  // namespace qcorr
