#include "qcorr/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qcorr/oracles.hpp"

namespace qcorr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_physical(const BlochVector& c, const char* what) {
  if (!is_physical(c))
    throw std::domain_error(std::string(what) + ": unphysical Bloch vector");
}

// Spectrum entropy straight from the analytic eigenvalues; tiny negatives
// admitted by the physicality tolerance are clamped.
double bd_entropy(const BlochVector& c) {
  const EigenQuad q = bd_eigenvalues(c);
  double s = 0.0;
  for (double l : q.lambda)
    if (l > 1e-15) s -= l * std::log2(l);
  return s;
}

// (1/2) sum_a [1+(-1)^a s] log2[1+(-1)^a s]
double entropic_profile(double s) {
  double v = 0.0;
  if (1.0 + s > 1e-15) v += (1.0 + s) * std::log2(1.0 + s);
  if (1.0 - s > 1e-15) v += (1.0 - s) * std::log2(1.0 - s);
  return 0.5 * v;
}

}  // namespace

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::D: return "D";
    case MeasureKind::Deficit: return "Deficit";
    case MeasureKind::RelEnt: return "RelEnt";
    case MeasureKind::AdjGeo: return "AdjGeo";
    case MeasureKind::Trace1: return "Trace1";
    case MeasureKind::NegQ: return "NegQ";
    case MeasureKind::Bures: return "Bures";
    case MeasureKind::Fidelity: return "Fidelity";
    case MeasureKind::LQU: return "LQU";
  }
  return "?";
}

std::optional<MeasureKind> measure_from_string(std::string_view name) {
  for (MeasureKind k : kAllMeasures)
    if (name == to_string(k)) return k;
  if (name == "D1") return MeasureKind::Trace1;
  if (name == "QN") return MeasureKind::NegQ;
  if (name == "DB") return MeasureKind::Bures;
  if (name == "DF" || name == "FidelityBased") return MeasureKind::Fidelity;
  if (name == "U") return MeasureKind::LQU;
  if (name == "DR") return MeasureKind::RelEnt;
  if (name == "DG") return MeasureKind::AdjGeo;
  return std::nullopt;
}

MeasureKind identity_representative(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Deficit:
    case MeasureKind::RelEnt: return MeasureKind::D;
    case MeasureKind::NegQ: return MeasureKind::Trace1;
    case MeasureKind::LQU: return MeasureKind::Fidelity;
    default: return kind;
  }
}

double discord_entropic(const BlochVector& c) {
  require_physical(c, "discord_entropic");
  const double sigma1 = ordered_sigma(c).sigma[0];
  return 1.0 - bd_entropy(c) + binary_entropy(0.5 * (1.0 + sigma1));
}

double one_way_deficit(const BlochVector& c) { return discord_entropic(c); }

double relative_entropy_discord(const BlochVector& c) {
  return discord_entropic(c);
}

double adjusted_geometric(const BlochVector& c) {
  require_physical(c, "adjusted_geometric");
  const auto s = ordered_sigma(c).sigma;
  return 2.0 * (s[1] * s[1] + s[2] * s[2]) /
         (1.0 + s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
}

double trace_distance_discord(const BlochVector& c) {
  require_physical(c, "trace_distance_discord");
  return ordered_sigma(c).sigma[1];
}

double negativity_of_quantumness(const BlochVector& c) {
  return trace_distance_discord(c);
}

namespace {

// The cyclic radicands factor exactly into Bell-eigenvalue products,
// (1+c_i)^2 - (c_j-c_k)^2 = 16 l_a l_b; evaluating them in factored form
// avoids sqrt-of-cancellation noise on the tetrahedron boundary and makes
// the cyclic form and the eigenvalue min-form agree to rounding everywhere.
// Pairings per cyclic axis: i=1 -> (ab)(gd), i=2 -> (bg)(ad), i=3 -> (ag)(bd).
std::array<double, 3> cyclic_pairing_sums(const BlochVector& c) {
  const EigenQuad q = bd_eigenvalues(c);
  const double al = std::max(q.lambda[0], 0.0);
  const double be = std::max(q.lambda[1], 0.0);
  const double ga = std::max(q.lambda[2], 0.0);
  const double de = std::max(q.lambda[3], 0.0);
  return {std::sqrt(al * be) + std::sqrt(ga * de),
          std::sqrt(be * ga) + std::sqrt(al * de),
          std::sqrt(al * ga) + std::sqrt(be * de)};
}

}  // namespace

double fmax_bd(const BlochVector& c) {
  require_physical(c, "fmax_bd");
  if (bd_eigenvalues(c).min() < -1e-10)
    throw std::domain_error("fmax_bd: negative radicand beyond tolerance");
  const auto sums = cyclic_pairing_sums(c);
  return 0.5 + std::max({sums[0], sums[1], sums[2]});
}

double fidelity_discord_min_form(const BlochVector& c) {
  const auto sums = cyclic_pairing_sums(c);
  return 1.0 - 2.0 * std::max({sums[0], sums[1], sums[2]});
}

double fidelity_discord(const BlochVector& c) {
  const double value = 2.0 * (1.0 - fmax_bd(c));
  if (std::abs(value - fidelity_discord_min_form(c)) > 1e-10)
    throw std::logic_error(
        "fidelity_discord: closed form and eigenvalue min-form disagree");
  return value;
}

double bures_discord(const BlochVector& c) {
  const double fmax = fmax_bd(c);
  return std::sqrt(
      std::max(0.0, (2.0 + std::numbers::sqrt2) * (1.0 - std::sqrt(fmax))));
}

double lqu_general(const TwoQubitDensity& rho) {
  if (!rho.is_valid())
    throw std::domain_error("lqu_general: invalid density matrix");
  const Matrix4c sqrt_rho = detail::hermitian_sqrt(rho.matrix());
  const Matrix4c rho_m = rho.matrix();
  const Matrix2c id = Matrix2c::Identity();
  auto objective = [&](const Vec3& n) {
    Matrix2c k2 = Matrix2c::Zero();
    for (int i = 0; i < 3; ++i) k2 += n[i] * pauli(i);
    const Matrix4c k = kron2(k2, id);
    const double quad = (rho_m * k * k).trace().real();
    const double corr = (sqrt_rho * k * sqrt_rho * k).trace().real();
    return quad - corr;
  };
  const auto result = detail::minimize_on_sphere(objective, 400, 60, 1e-8);
  return std::max(result.value, 0.0);
}

double frozen_profile(MeasureKind kind, double s) {
  if (s < 0.0 || s > 1.0)
    throw std::domain_error("frozen_profile: s outside [0,1]");
  switch (identity_representative(kind)) {
    case MeasureKind::D:
      return entropic_profile(s);
    case MeasureKind::AdjGeo:
      return 2.0 * s * s / (1.0 + s * s);
    case MeasureKind::Trace1:
      return s;
    case MeasureKind::Bures:
      return 1.0 + (1.0 + std::numbers::sqrt2) *
                       (1.0 - std::sqrt(std::sqrt(1.0 - s * s) + 1.0));
    case MeasureKind::Fidelity:
      return 1.0 - std::sqrt(std::max(0.0, 1.0 - s * s));
    default:
      break;
  }
  throw std::logic_error("frozen_profile: unhandled kind");
}

MeasureReport evaluate_all(const BlochVector& c) {
  require_physical(c, "evaluate_all");
  MeasureReport report;
  report.c = c;
  report.value.fill(kNaN);

  auto set = [&](MeasureKind k, double v, bool identity) {
    report.value[static_cast<int>(k)] = v;
    report.via_identity[static_cast<int>(k)] = identity;
  };

  const double d = discord_entropic(c);
  set(MeasureKind::D, d, false);
  set(MeasureKind::Deficit, d, true);
  set(MeasureKind::RelEnt, d, true);

  set(MeasureKind::AdjGeo, adjusted_geometric(c), false);

  const double d1 = trace_distance_discord(c);
  set(MeasureKind::Trace1, d1, false);
  set(MeasureKind::NegQ, d1, true);

  const double fmax = fmax_bd(c);
  const double df = fidelity_discord(c);
  set(MeasureKind::Bures,
      std::sqrt(std::max(
          0.0, (2.0 + std::numbers::sqrt2) * (1.0 - std::sqrt(fmax)))),
      false);
  set(MeasureKind::Fidelity, df, false);
  set(MeasureKind::LQU, df, true);  // U = D_F on BD states
  return report;
}

}  // namespace qcorr
