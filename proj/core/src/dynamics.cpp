#include "qcorr/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_kernel(const SampledKernel& kernel) {
  const auto& s = kernel.samples;
  if (s.size() < 2)
    throw std::invalid_argument("ChannelSpec: kernel needs at least 2 samples");
  if (std::abs(s.front().first) > 1e-12 || std::abs(s.front().second) > 1e-12)
    throw std::invalid_argument("ChannelSpec: kernel must start at (0, 0)");
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].first <= s[i - 1].first)
      throw std::invalid_argument(
          "ChannelSpec: kernel sample times must be strictly increasing");
    if (s[i].second < -1e-12)
      throw std::invalid_argument("ChannelSpec: kernel values must be >= 0");
  }
}

// non-preserved axes of channel k, in increasing order (0-based)
std::pair<int, int> decaying_axes(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::bit_flip: return {1, 2};
    case ChannelKind::bit_phase_flip: return {0, 2};
    default: return {0, 1};
  }
}

}  // namespace

ChannelSpec ChannelSpec::markovian(ChannelKind kind, double gamma) {
  if (gamma <= 0.0)
    throw std::invalid_argument("ChannelSpec: gamma must be positive");
  return ChannelSpec{kind, MarkovianDecay{gamma}};
}

ChannelSpec ChannelSpec::kernel(ChannelKind kind,
                                std::vector<std::pair<double, double>> samples) {
  SampledKernel k{std::move(samples)};
  validate_kernel(k);
  return ChannelSpec{kind, std::move(k)};
}

double ChannelSpec::lambda_at(double t) const {
  if (t < 0.0) throw std::domain_error("ChannelSpec: negative time");
  if (const auto* m = std::get_if<MarkovianDecay>(&profile))
    return 2.0 * m->gamma * t;
  const auto& s = std::get<SampledKernel>(profile).samples;
  if (t > s.back().first + 1e-12)
    throw std::domain_error("ChannelSpec: time outside kernel sample range");
  if (t >= s.back().first) return s.back().second;
  auto it = std::upper_bound(
      s.begin(), s.end(), t,
      [](double v, const std::pair<double, double>& p) { return v < p.first; });
  if (it == s.begin()) return s.front().second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (t - lo.first) / (hi.first - lo.first);
  return lo.second + w * (hi.second - lo.second);
}

BlochVector evolve_c(const BlochVector& c0, const ChannelSpec& channel,
                     double t) {
  const double decay = std::exp(-channel.lambda_at(t));
  BlochVector c = c0;
  const int keep = channel.preserved_axis();
  for (int i = 0; i < 3; ++i)
    if (i != keep) c[i] = c0[i] * decay;
  return c;
}

BlochVector freezing_initial(const FreezingInit& init) {
  if (init.c <= 0.0 || init.c > 1.0)
    throw std::domain_error("freezing_initial: c must lie in (0, 1]");
  if (init.variant < 1 || init.variant > 4)
    throw std::invalid_argument("freezing_initial: variant must be 1..4");
  const auto [i0, j0] = decaying_axes(init.kind);
  const int k = static_cast<int>(init.kind) - 1;
  BlochVector c;
  c[k] = init.c;
  switch (init.variant) {
    case 1: c[i0] = 1.0; c[j0] = -init.c; break;
    case 2: c[i0] = -1.0; c[j0] = init.c; break;
    case 3: c[j0] = 1.0; c[i0] = -init.c; break;
    default: c[j0] = -1.0; c[i0] = init.c; break;
  }
  return c;
}

std::vector<double> threshold_time(double c, const ChannelSpec& channel) {
  if (c <= 0.0 || c > 1.0)
    throw std::domain_error("threshold_time: c must lie in (0, 1]");
  const double target = -std::log(c);
  if (const auto* m = std::get_if<MarkovianDecay>(&channel.profile))
    return {target / (2.0 * m->gamma)};

  const auto& s = std::get<SampledKernel>(channel.profile).samples;
  std::vector<double> crossings;
  auto push = [&](double t) {
    if (crossings.empty() || t - crossings.back() > 1e-12) crossings.push_back(t);
  };
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double f0 = s[i].second - target;
    const double f1 = s[i + 1].second - target;
    if (std::abs(f0) <= 1e-15) push(s[i].first);
    if (f0 * f1 < 0.0) {
      const double w = f0 / (f0 - f1);
      push(s[i].first + w * (s[i + 1].first - s[i].first));
    }
  }
  if (std::abs(s.back().second - target) <= 1e-15) push(s.back().first);
  return crossings;
}

double predicted_measure(MeasureKind kind, double c, const ChannelSpec& channel,
                         double t) {
  if (c <= 0.0 || c > 1.0)
    throw std::domain_error("predicted_measure: c must lie in (0, 1]");
  const double s = std::min(c, std::exp(-channel.lambda_at(t)));
  const double value = frozen_profile(kind, s);
  if (kind == MeasureKind::Bures) return std::sqrt(std::max(0.0, value));
  return value;
}

std::optional<double> freezing_c_of(const BlochVector& c0, ChannelKind kind) {
  constexpr double tol = 1e-12;
  const auto [i0, j0] = decaying_axes(kind);
  const int k = static_cast<int>(kind) - 1;
  const double ck = c0[k];
  if (std::abs(ck) <= tol || std::abs(ck) > 1.0 + tol) return std::nullopt;
  for (auto [i, j] : {std::pair{i0, j0}, std::pair{j0, i0}}) {
    if (std::abs(std::abs(c0[i]) - 1.0) > tol) continue;
    if (std::abs(c0[j] + c0[i] * ck) <= tol) return std::abs(ck);
  }
  return std::nullopt;
}

std::vector<TrajectorySample> trajectory(const BlochVector& c0,
                                         const ChannelSpec& channel,
                                         std::span<const double> t_grid,
                                         std::span<const MeasureKind> kinds) {
  if (!is_physical(c0))
    throw std::domain_error("trajectory: unphysical initial state");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] < t_grid[i - 1])
      throw std::invalid_argument("trajectory: time grid must be increasing");

  const std::optional<double> freeze_c = freezing_c_of(c0, channel.kind);
  std::vector<TrajectorySample> samples;
  samples.reserve(t_grid.size());
  for (double t : t_grid) {
    TrajectorySample sample;
    sample.t = t;
    sample.c = evolve_c(c0, channel, t);
    const MeasureReport full = evaluate_all(sample.c);
    sample.values.c = sample.c;
    sample.values.value.fill(kNaN);
    sample.frozen_prediction.fill(kNaN);
    for (MeasureKind kind : kinds) {
      const int idx = static_cast<int>(kind);
      sample.values.value[idx] = full.value[idx];
      sample.values.via_identity[idx] = full.via_identity[idx];
      if (freeze_c)
        sample.frozen_prediction[idx] =
            predicted_measure(kind, *freeze_c, channel, t);
    }
    sample.has_prediction = freeze_c.has_value();
    samples.push_back(std::move(sample));
  }
  return samples;
}

std::map<MeasureKind, std::vector<FreezeInterval>> detect_freezing(
    const std::vector<TrajectorySample>& samples, double tol) {
  if (samples.size() < 3)
    throw std::invalid_argument("detect_freezing: need at least 3 samples");
  std::map<MeasureKind, std::vector<FreezeInterval>> out;
  for (MeasureKind kind : kAllMeasures) {
    const int idx = static_cast<int>(kind);
    if (std::isnan(samples.front().values.value[idx])) continue;
    std::vector<FreezeInterval> intervals;
    std::optional<std::size_t> run_begin;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      const double a = samples[i].values.value[idx];
      const double b = samples[i + 1].values.value[idx];
      const bool frozen_edge = std::abs(b - a) < tol;
      if (frozen_edge && !run_begin) run_begin = i;
      if (!frozen_edge && run_begin) {
        intervals.push_back({samples[*run_begin].t, samples[i].t});
        run_begin.reset();
      }
    }
    if (run_begin)
      intervals.push_back({samples[*run_begin].t, samples.back().t});
    out[kind] = std::move(intervals);
  }
  return out;
}

}  // namespace qcorr
