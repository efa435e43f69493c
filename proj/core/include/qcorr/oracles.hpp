#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "qcorr/functionals.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

/// Deterministic search budget. coarse_grid_points is the sphere-grid size
/// for measurement searches, the number of multistart descents for the CQ
/// distance searches, and the number of random phase-(ii) samples for
/// fmax_cq_search. Identical seed and budget give bit-identical results.
struct SearchBudget {
  int coarse_grid_points = 400;
  int refinement_iterations = 30;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;

  static SearchBudget measurement_default() { return {400, 30, 0, 1e-8}; }
  static SearchBudget cq_default() { return {64, 400, 0, 1e-4}; }
  static SearchBudget fmax_default() { return {10000, 120, 0, 1e-6}; }
};

struct OracleResult {
  double value = 0.0;
  Vec3 direction{};        // measurement searches: argmin unit vector
  CQStateParams argmin{};  // CQ searches: optimizer parameters
  bool converged = false;
  std::uint64_t evaluations = 0;
};

enum class CqMetric { trace, hilbert_schmidt, relative_entropy };

/// min over projective measurements on A of I(rho) - I(sum_i P_i rho P_i),
/// projectors (I +- n.sigma)/2 (x) I.
OracleResult measurement_discord(const TwoQubitDensity& rho,
                                 const SearchBudget& budget);

/// min over projective measurements on A of S(sum_i P_i rho P_i) - S(rho).
OracleResult measurement_deficit(const TwoQubitDensity& rho,
                                 const SearchBudget& budget);

/// Seeded random multistart + coordinate pattern descent over CQStateParams.
/// Returns the raw metric minimum (trace norm, squared HS norm, or relative
/// entropy against CQ states mixed with 1e-9 of the maximally mixed state).
OracleResult min_distance_cq(const TwoQubitDensity& rho, CqMetric metric,
                             const SearchBudget& budget);

/// Phase (i): per-axis golden-section maximization over the one-parameter BD
/// CQ family. Phase (ii): budget.coarse_grid_points random CQ states; if any
/// exceeds phase (i) by more than budget.tolerance a std::logic_error is
/// thrown (a numerical witness that the optimal CQ state is BD).
OracleResult fmax_cq_search(const TwoQubitDensity& rho,
                            const SearchBudget& budget);

/// Wigner-Yanase skew information Tr[rho K^2 - sqrt(rho) K sqrt(rho) K].
/// Throws std::domain_error when K is not Hermitian within 1e-12.
double skew_info(const TwoQubitDensity& rho, const Matrix4c& K);

// --- seeded sampling helpers shared by the certification suites

using Rng = std::mt19937_64;

Vec3 sample_unit_vector(Rng& rng);
Vec3 sample_ball_vector(Rng& rng);
BlochVector sample_physical_bloch(Rng& rng);   // rejection from the cube
TwoQubitDensity sample_density(Rng& rng);      // Ginibre ensemble
CQStateParams sample_cq(Rng& rng);

namespace detail {

struct SphereMinResult {
  Vec3 n{};
  double value = 0.0;
  std::uint64_t evaluations = 0;
  bool converged = false;
};

/// Fibonacci-sphere coarse grid followed by alternating golden-section
/// refinement of the two spherical angles; stops early once a full round
/// improves by less than tol.
SphereMinResult minimize_on_sphere(const std::function<double(const Vec3&)>& f,
                                   int coarse_points, int refine_iterations,
                                   double tol);

Matrix4c direction_projector(const Vec3& n, bool plus);
Matrix4c post_measurement(const Matrix4c& rho, const Vec3& n);

}  // namespace detail

}  // namespace qcorr
