#include "qcorr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// The (m, a) line is a curve in the (zeta1, zeta3) plane of sorted absolute
// correlations, so only |m s + a| is physical; it is mapped into the
// freezing-type quadrant c_i = s, c_j = -|m s + a|, c_k = +c_mid. The other
// sign/permutation quadrants are local-unitary images with identical measures.
BlochVector line_state(const LineSpec& line, double s) {
  const auto axes = [&]() -> std::pair<int, int> {
    switch (line.k) {
      case 1: return {1, 2};
      case 2: return {0, 2};
      default: return {0, 1};
    }
  }();
  BlochVector c;
  c[line.k - 1] = line.c_mid;
  c[axes.first] = s;
  c[axes.second] = -std::abs(line.m * s + line.a);
  return c;
}

}  // namespace

ContourGrid contour_grid(std::span<const MeasureKind> kinds, int k, double ck,
                         int n) {
  if (k < 1 || k > 3)
    throw std::invalid_argument("contour_grid: axis k must be 1, 2 or 3");
  if (std::abs(ck) > 1.0)
    throw std::invalid_argument("contour_grid: |c_k| must be <= 1");
  if (n < 16) throw std::invalid_argument("contour_grid: resolution n >= 16");

  ContourGrid grid;
  grid.k = k;
  grid.ck = ck;
  grid.n = n;
  grid.coords.resize(n);
  for (int i = 0; i < n; ++i)
    grid.coords[i] = -1.0 + 2.0 * static_cast<double>(i) / (n - 1);
  grid.physical.assign(static_cast<std::size_t>(n) * n, 0);
  for (MeasureKind kind : kinds)
    grid.values[static_cast<int>(kind)].assign(
        static_cast<std::size_t>(n) * n, kNaN);

  const auto [ai, aj] = grid.plane_axes();
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      BlochVector c;
      c[k - 1] = ck;
      c[ai - 1] = grid.coords[col];
      c[aj - 1] = grid.coords[row];
      if (!is_physical(c)) continue;
      grid.physical[grid.cell(row, col)] = 1;
      const MeasureReport report = evaluate_all(c);
      for (MeasureKind kind : kinds)
        grid.values[static_cast<int>(kind)][grid.cell(row, col)] =
            report.at(kind);
    }
  }
  return grid;
}

LineScanResult line_scan(const LineSpec& line, std::span<const MeasureKind> kinds,
                         int n_samples) {
  if (line.k < 1 || line.k > 3)
    throw std::invalid_argument("line_scan: axis k must be 1, 2 or 3");
  if (n_samples < 1)
    throw std::invalid_argument("line_scan: need at least one sample");

  LineScanResult result;
  result.residual.fill(kNaN);

  // The tetrahedron is convex and s -> c(s) is affine, so the physical part
  // of the segment is a contiguous sub-interval.
  std::vector<double> s_values(n_samples);
  if (n_samples == 1) {
    s_values[0] = line.s_begin;
  } else {
    for (int i = 0; i < n_samples; ++i)
      s_values[i] = line.s_begin +
                    (line.s_end - line.s_begin) * i / (n_samples - 1);
  }
  int first = -1, last = -1;
  for (int i = 0; i < n_samples; ++i) {
    if (is_physical(line_state(line, s_values[i]))) {
      if (first < 0) first = i;
      last = i;
    } else if (first >= 0) {
      break;
    }
  }
  if (first < 0) {
    result.empty = true;
    result.clipped = true;
    return result;
  }
  result.s_begin_used = s_values[first];
  result.s_end_used = s_values[last];
  result.clipped = (first != 0 || last != n_samples - 1);

  std::array<double, kMeasureCount> lo{}, hi{};
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (int i = first; i <= last; ++i) {
    const MeasureReport report = evaluate_all(line_state(line, s_values[i]));
    for (MeasureKind kind : kinds) {
      const int idx = static_cast<int>(kind);
      lo[idx] = std::min(lo[idx], report.value[idx]);
      hi[idx] = std::max(hi[idx], report.value[idx]);
    }
  }
  for (MeasureKind kind : kinds) {
    const int idx = static_cast<int>(kind);
    result.residual[idx] = hi[idx] - lo[idx];
  }
  return result;
}

std::vector<LineSpec> find_freezing_lines(int k, double c, double tol,
                                          const FreezingLineSearch& search) {
  if (c <= 0.0 || c >= 1.0)
    throw std::domain_error("find_freezing_lines: c must lie in (0, 1)");

  const std::array<MeasureKind, 2> witnesses = {MeasureKind::Trace1,
                                                MeasureKind::AdjGeo};
  const int nm =
      static_cast<int>(std::lround((search.m_max - search.m_min) / search.m_step)) + 1;
  const int na =
      static_cast<int>(std::lround((search.a_max - search.a_min) / search.a_step)) + 1;

  struct Survivor {
    int im, ia;
    double m, a;
  };
  std::vector<Survivor> survivors;
  for (int im = 0; im < nm; ++im) {
    const double m = search.m_min + im * search.m_step;
    for (int ia = 0; ia < na; ++ia) {
      const double a = search.a_min + ia * search.a_step;
      LineSpec line{m, a, k, c, c, 1.0};
      // endpoints physical <=> whole segment physical (convexity); a
      // freezing trajectory must stay physical over the full decay range
      if (!is_physical(line_state(line, c)) ||
          !is_physical(line_state(line, 1.0)))
        continue;
      const LineScanResult scan =
          line_scan(line, witnesses, search.samples_per_line);
      if (scan.empty || scan.clipped) continue;
      bool pass = true;
      for (MeasureKind w : witnesses)
        pass = pass && scan.residual[static_cast<int>(w)] < tol;
      if (pass) survivors.push_back({im, ia, m, a});
    }
  }

  // connected components with radius two grid steps
  std::vector<int> component(survivors.size(), -1);
  int n_components = 0;
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    if (component[i] >= 0) continue;
    component[i] = n_components;
    std::vector<std::size_t> queue{i};
    while (!queue.empty()) {
      const std::size_t u = queue.back();
      queue.pop_back();
      for (std::size_t v = 0; v < survivors.size(); ++v) {
        if (component[v] >= 0) continue;
        if (std::abs(survivors[u].im - survivors[v].im) <= 2 &&
            std::abs(survivors[u].ia - survivors[v].ia) <= 2) {
          component[v] = n_components;
          queue.push_back(v);
        }
      }
    }
    ++n_components;
  }

  std::vector<LineSpec> centers;
  for (int comp = 0; comp < n_components; ++comp) {
    double m_sum = 0.0, a_sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      if (component[i] != comp) continue;
      m_sum += survivors[i].m;
      a_sum += survivors[i].a;
      ++count;
    }
    centers.push_back({m_sum / count, a_sum / count, k, c, c, 1.0});
  }
  std::sort(centers.begin(), centers.end(),
            [](const LineSpec& x, const LineSpec& y) { return x.m < y.m; });
  return centers;
}

std::vector<OverlayPoint> trajectory_overlay(const ContourGrid& grid,
                                             const BlochVector& c0,
                                             const ChannelSpec& channel,
                                             std::span<const double> t_grid) {
  if (static_cast<int>(channel.kind) != grid.k)
    throw std::invalid_argument(
        "trajectory_overlay: channel axis does not match the grid slice");
  const auto [ai, aj] = grid.plane_axes();
  std::vector<OverlayPoint> path;
  path.reserve(t_grid.size());
  for (double t : t_grid) {
    const BlochVector c = evolve_c(c0, channel, t);
    path.push_back({t, c[ai - 1], c[aj - 1]});
  }
  return path;
}

}  // namespace qcorr
