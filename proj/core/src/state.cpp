#include "qcorr/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcorr {

using Complex = std::complex<double>;

double EigenQuad::min() const {
  return *std::min_element(lambda.begin(), lambda.end());
}

double EigenQuad::sum() const {
  return std::accumulate(lambda.begin(), lambda.end(), 0.0);
}

double TwoQubitDensity::hermiticity_defect() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double TwoQubitDensity::trace_defect() const {
  return std::abs(m_.trace() - Complex(1.0, 0.0));
}

double TwoQubitDensity::min_eigenvalue() const {
  Matrix4c h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool TwoQubitDensity::is_valid(double herm_tol, double trace_tol,
                               double psd_tol) const {
  return hermiticity_defect() <= herm_tol && trace_defect() <= trace_tol &&
         min_eigenvalue() >= -psd_tol;
}

void CQStateParams::validate() const {
  auto norm = [](const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  };
  if (std::abs(norm(e) - 1.0) > 1e-10)
    throw std::invalid_argument("CQStateParams: e must be a unit vector");
  if (norm(r1) > 1.0 + 1e-10 || norm(r2) > 1.0 + 1e-10)
    throw std::invalid_argument("CQStateParams: ||r1||, ||r2|| must be <= 1");
  if (p < -1e-12 || p > 1.0 + 1e-12)
    throw std::invalid_argument("CQStateParams: p must lie in [0,1]");
}

Matrix2c pauli(int axis) {
  Matrix2c s;
  switch (axis) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 2: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: axis must be 0, 1 or 2");
  }
  return s;
}

Matrix4c kron2(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

TwoQubitDensity bd_density(const BlochVector& c) {
  Matrix4c m = Matrix4c::Identity();
  for (int i = 0; i < 3; ++i) m += c[i] * kron2(pauli(i), pauli(i));
  return TwoQubitDensity(0.25 * m);
}

EigenQuad bd_eigenvalues(const BlochVector& c) {
  EigenQuad q;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double sa = (a == 0) ? 1.0 : -1.0;
      const double sb = (b == 0) ? 1.0 : -1.0;
      q.lambda[2 * a + b] = 0.25 * (1.0 + sa * c.c1 - sa * sb * c.c2 + sb * c.c3);
    }
  }
  return q;
}

bool is_physical(const BlochVector& c) {
  return bd_eigenvalues(c).min() >= -1e-12;
}

OrderedCorrelations ordered_sigma(const BlochVector& c) {
  OrderedCorrelations out;
  std::array<int, 3> idx = {0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::abs(c[a]) > std::abs(c[b]);
  });
  for (int i = 0; i < 3; ++i) {
    out.index[i] = idx[i];
    out.sigma[i] = std::abs(c[idx[i]]);
  }
  return out;
}

TwoQubitDensity cq_density(const CQStateParams& params) {
  params.validate();
  auto dot_sigma = [](const Vec3& v) {
    Matrix2c m = Matrix2c::Zero();
    for (int i = 0; i < 3; ++i) m += v[i] * pauli(i);
    return m;
  };
  const Matrix2c id = Matrix2c::Identity();
  const Matrix2c proj_plus = 0.5 * (id + dot_sigma(params.e));
  const Matrix2c proj_minus = 0.5 * (id - dot_sigma(params.e));
  const Matrix2c rho1 = 0.5 * (id + dot_sigma(params.r1));
  const Matrix2c rho2 = 0.5 * (id + dot_sigma(params.r2));
  return TwoQubitDensity(params.p * kron2(proj_plus, rho1) +
                         (1.0 - params.p) * kron2(proj_minus, rho2));
}

BlochTriple bloch_triple(const TwoQubitDensity& rho) {
  BlochTriple out;
  const Matrix4c& m = rho.matrix();
  const Matrix2c id = Matrix2c::Identity();
  for (int i = 0; i < 3; ++i) {
    out.x[i] = (m * kron2(pauli(i), id)).trace().real();
    out.y[i] = (m * kron2(id, pauli(i))).trace().real();
    for (int j = 0; j < 3; ++j)
      out.T(i, j) = (m * kron2(pauli(i), pauli(j))).trace().real();
  }
  return out;
}

}  // namespace qcorr
