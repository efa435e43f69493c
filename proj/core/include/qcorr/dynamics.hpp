#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "qcorr/measures.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

/// Local nondissipative flip channels acting on both qubits.
enum class ChannelKind : int {
  bit_flip = 1,        // preserves c1
  bit_phase_flip = 2,  // preserves c2
  phase_flip = 3,      // preserves c3
};

struct MarkovianDecay {
  double gamma = 1.0;  // decoherence rate, Lambda(t) = 2*gamma*t
};

/// Generalized decay exponent Lambda(t) given as sample pairs (t, Lambda),
/// Lambda(0) = 0, linearly interpolated. Lambda may decrease over sub-ranges.
struct SampledKernel {
  std::vector<std::pair<double, double>> samples;
};

struct ChannelSpec {
  ChannelKind kind = ChannelKind::phase_flip;
  std::variant<MarkovianDecay, SampledKernel> profile = MarkovianDecay{};

  static ChannelSpec markovian(ChannelKind kind, double gamma);
  static ChannelSpec kernel(ChannelKind kind,
                            std::vector<std::pair<double, double>> samples);

  bool is_markovian() const {
    return std::holds_alternative<MarkovianDecay>(profile);
  }
  int preserved_axis() const { return static_cast<int>(kind) - 1; }

  /// Decay exponent at time t. Markovian: 2*gamma*t. Kernel: interpolant;
  /// throws std::domain_error outside the sampled range or for t < 0.
  double lambda_at(double t) const;
};

/// Freezing initial condition of channel kind k: one non-preserved component
/// is +-1, the other is -+ c_k, |c_k| = c. Variants (i0 < j0 the two
/// non-preserved axes):
///   1: c_i0 = +1, c_j0 = -c   2: c_i0 = -1, c_j0 = +c
///   3: c_j0 = +1, c_i0 = -c   4: c_j0 = -1, c_i0 = +c
/// with c_k = +c in all four.
struct FreezingInit {
  ChannelKind kind = ChannelKind::phase_flip;
  double c = 0.0;   // in (0, 1]
  int variant = 1;  // 1..4
};

BlochVector evolve_c(const BlochVector& c0, const ChannelSpec& channel, double t);

BlochVector freezing_initial(const FreezingInit& init);

/// Times where Lambda(t) = -ln c. Markovian: the single t* = -ln(c)/(2 gamma);
/// kernel: every crossing of the interpolant, in increasing order.
std::vector<double> threshold_time(double c, const ChannelSpec& channel);

/// frozen_profile(kind, min(c, e^{-Lambda(t)})), with the Bures entry mapped
/// back to the distance convention (square root of the table row).
double predicted_measure(MeasureKind kind, double c, const ChannelSpec& channel,
                         double t);

struct TrajectorySample {
  double t = 0.0;
  BlochVector c;
  MeasureReport values;  // NaN where the kind was not requested
  std::array<double, kMeasureCount> frozen_prediction{};
  bool has_prediction = false;
};

/// Returns |c_k| when c0 matches a freezing initial condition of the channel
/// axis (up to local-unitary sign flips), nullopt otherwise.
std::optional<double> freezing_c_of(const BlochVector& c0, ChannelKind kind);

std::vector<TrajectorySample> trajectory(const BlochVector& c0,
                                         const ChannelSpec& channel,
                                         std::span<const double> t_grid,
                                         std::span<const MeasureKind> kinds);

struct FreezeInterval {
  double t_begin = 0.0;
  double t_end = 0.0;
};

/// Maximal intervals on which consecutive samples differ by less than tol,
/// per measure present in the samples. Needs at least 3 samples.
std::map<MeasureKind, std::vector<FreezeInterval>> detect_freezing(
    const std::vector<TrajectorySample>& samples, double tol = 1e-7);

}  // namespace qcorr
