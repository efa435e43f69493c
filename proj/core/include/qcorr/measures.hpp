#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "qcorr/functionals.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

/// The nine correlation quantifiers. Trace1 is the trace-distance measure,
/// Fidelity the fidelity-based one, LQU the local quantum uncertainty.
enum class MeasureKind : int {
  D = 0,
  Deficit,
  RelEnt,
  AdjGeo,
  Trace1,
  NegQ,
  Bures,
  Fidelity,
  LQU,
};

inline constexpr int kMeasureCount = 9;
inline constexpr std::array<MeasureKind, kMeasureCount> kAllMeasures = {
    MeasureKind::D,      MeasureKind::Deficit, MeasureKind::RelEnt,
    MeasureKind::AdjGeo, MeasureKind::Trace1,  MeasureKind::NegQ,
    MeasureKind::Bures,  MeasureKind::Fidelity, MeasureKind::LQU,
};

std::string_view to_string(MeasureKind kind);

/// Parses canonical names and the usual short aliases
/// (D1 -> Trace1, QN -> NegQ, DB -> Bures, DF/FidelityBased -> Fidelity,
/// U -> LQU, DR -> RelEnt, DG -> AdjGeo). Case sensitive.
std::optional<MeasureKind> measure_from_string(std::string_view name);

/// Group representative of the identities that hold on BD states:
/// Deficit,RelEnt -> D; NegQ -> Trace1; LQU -> Fidelity; otherwise self.
MeasureKind identity_representative(MeasureKind kind);

struct MeasureReport {
  BlochVector c;
  std::array<double, kMeasureCount> value{};
  std::array<bool, kMeasureCount> via_identity{};

  double at(MeasureKind k) const { return value[static_cast<int>(k)]; }
};

// --- closed forms on BD states (all throw std::domain_error on unphysical c)

double discord_entropic(const BlochVector& c);
double one_way_deficit(const BlochVector& c);
double relative_entropy_discord(const BlochVector& c);
double adjusted_geometric(const BlochVector& c);
double trace_distance_discord(const BlochVector& c);
double negativity_of_quantumness(const BlochVector& c);

/// Maximum Uhlmann fidelity to the classical-quantum set,
/// F_max = 1/2 + (1/4) max over cyclic (i,j,k) of
/// [sqrt((1+c_i)^2-(c_j-c_k)^2) + sqrt((1-c_i)^2-(c_j+c_k)^2)].
double fmax_bd(const BlochVector& c);

/// D_F = 2(1 - F_max); cross-checked against the eigenvalue min-form within
/// 1e-10 on every call (throws std::logic_error if the two routes disagree).
double fidelity_discord(const BlochVector& c);

/// min{q1,q2,q3} with q = 1 - 2(sqrt(l l') + sqrt(l'' l''')) over the three
/// pairings of the Bell spectrum.
double fidelity_discord_min_form(const BlochVector& c);

double bures_discord(const BlochVector& c);

/// Local quantum uncertainty of an arbitrary two-qubit state: minimum of the
/// skew information over observables n.sigma (x) I, found numerically by a
/// sphere grid plus golden-section refinement stable to 1e-8.
double lqu_general(const TwoQubitDensity& rho);

/// f_Q(s) per measure for the frozen family. The Bures entry is the literal
/// table row (the square of the distance convention used by bures_discord).
/// Throws std::domain_error outside [0,1].
double frozen_profile(MeasureKind kind, double s);

/// All nine values; identity groups are exactly equal by construction and
/// flagged in via_identity.
MeasureReport evaluate_all(const BlochVector& c);

}  // namespace qcorr
