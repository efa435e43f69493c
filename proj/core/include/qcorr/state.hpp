#pragma once

#include <array>
#include <Eigen/Dense>

namespace qcorr {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vec3 = std::array<double, 3>;

/// Correlation triple c = (c1,c2,c3) of a Bell-diagonal two-qubit state,
/// rho = (1/4)(I + sum_i c_i sigma_i (x) sigma_i). Each |c_i| <= 1 for a
/// physical state; physicality itself is the tetrahedron condition checked
/// by is_physical().
struct BlochVector {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  double operator[](int axis) const {
    return axis == 0 ? c1 : axis == 1 ? c2 : c3;
  }
  double& operator[](int axis) {
    return axis == 0 ? c1 : axis == 1 ? c2 : c3;
  }
};

/// Bell-basis spectrum lambda_ab, a,b in {0,1}, stored in order 00,01,10,11.
struct EigenQuad {
  std::array<double, 4> lambda{};

  double operator()(int a, int b) const { return lambda[2 * a + b]; }
  double min() const;
  double sum() const;
};

/// Absolute correlations sorted descending: sigma[0] >= sigma[1] >= sigma[2],
/// with index[i] the originating axis (0-based, ties broken by lower axis).
struct OrderedCorrelations {
  std::array<double, 3> sigma{};
  std::array<int, 3> index{};
};

/// {x, y, T} decomposition of a two-qubit state: local Bloch vectors and the
/// 3x3 correlation matrix T_ij = Tr[rho sigma_i (x) sigma_j].
struct BlochTriple {
  Vec3 x{};
  Vec3 y{};
  Eigen::Matrix3d T = Eigen::Matrix3d::Zero();
};

/// 4x4 density matrix in the computational basis |00>,|01>,|10>,|11>.
/// Construction does not enforce positivity so that boundary and deliberately
/// unphysical matrices can be built for tests; consumers check what they need.
class TwoQubitDensity {
 public:
  TwoQubitDensity() : m_(Matrix4c::Identity() / 4.0) {}
  explicit TwoQubitDensity(Matrix4c m) : m_(std::move(m)) {}

  const Matrix4c& matrix() const { return m_; }

  double hermiticity_defect() const;  // max elementwise |m - m^dagger|
  double trace_defect() const;        // |Tr m - 1|
  double min_eigenvalue() const;

  bool is_valid(double herm_tol = 1e-12, double trace_tol = 1e-12,
                double psd_tol = 1e-10) const;

 private:
  Matrix4c m_;
};

/// Classical-quantum state parameters:
///   chi = p P(+e) (x) rho1 + (1-p) P(-e) (x) rho2,
/// with P(+-e) = (I +- e.sigma)/2 and rho_i = (I + r_i.sigma)/2.
struct CQStateParams {
  Vec3 e{0.0, 0.0, 1.0};
  double p = 0.5;
  Vec3 r1{};
  Vec3 r2{};

  /// Throws std::invalid_argument unless ||e|| = 1 within 1e-10,
  /// ||r1||,||r2|| <= 1 + 1e-10 and p in [0,1] (tolerance 1e-12).
  void validate() const;
};

Matrix2c pauli(int axis);  // sigma_1, sigma_2, sigma_3 for axis 0,1,2
Matrix4c kron2(const Matrix2c& a, const Matrix2c& b);

TwoQubitDensity bd_density(const BlochVector& c);
EigenQuad bd_eigenvalues(const BlochVector& c);

/// Tetrahedron membership: min lambda_ab >= -1e-12.
bool is_physical(const BlochVector& c);

OrderedCorrelations ordered_sigma(const BlochVector& c);

TwoQubitDensity cq_density(const CQStateParams& params);

BlochTriple bloch_triple(const TwoQubitDensity& rho);

}  // namespace qcorr
