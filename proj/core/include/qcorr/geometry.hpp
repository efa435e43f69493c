#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qcorr/dynamics.hpp"
#include "qcorr/measures.hpp"

namespace qcorr {

/// n x n slice of the BD tetrahedron at a fixed axis value. Cells are
/// row-major with row = index along c_j, col = index along c_i, where (i,j)
/// are the two free axes in increasing order. Unphysical cells carry NaN.
struct ContourGrid {
  int k = 3;        // fixed axis, 1..3
  double ck = 0.0;  // value of the fixed component
  int n = 0;
  std::vector<double> coords;            // shared axis values, -1..1
  std::vector<std::uint8_t> physical;    // n*n flags
  std::array<std::vector<double>, kMeasureCount> values;  // empty if unused

  std::pair<int, int> plane_axes() const {  // 1-based (i, j)
    switch (k) {
      case 1: return {2, 3};
      case 2: return {1, 3};
      default: return {1, 2};
    }
  }
  int cell(int row, int col) const { return row * n + col; }
  bool has(MeasureKind kind) const {
    return !values[static_cast<int>(kind)].empty();
  }
};

ContourGrid contour_grid(std::span<const MeasureKind> kinds, int k, double ck,
                         int n);

/// Straight line zeta1(s) = s, zeta3(s) = m*s + a in the sorted-correlation
/// plane of the two decaying components of channel k, with the preserved
/// component pinned at c_mid. Scan states are built in the freezing-type
/// quadrant c_i0 = s, c_j0 = -|m*s + a|, c_k = +c_mid; the other quadrants
/// are local-unitary images with identical measure values, so m and -m
/// describe the same physical line.
struct LineSpec {
  double m = 0.0;
  double a = 0.0;
  int k = 3;           // channel axis, 1..3
  double c_mid = 0.0;  // pinned middle correlation
  double s_begin = 0.0;
  double s_end = 1.0;
};

struct LineScanResult {
  std::array<double, kMeasureCount> residual{};  // max - min along the segment
  double s_begin_used = 0.0;
  double s_end_used = 0.0;
  bool clipped = false;  // segment exited the physical region
  bool empty = false;    // no physical sub-segment at all
};

LineScanResult line_scan(const LineSpec& line, std::span<const MeasureKind> kinds,
                         int n_samples);

struct FreezingLineSearch {
  double m_min = -1.0, m_max = 1.0, m_step = 0.01;
  double a_min = -0.5, a_max = 0.5, a_step = 0.01;
  int samples_per_line = 33;
};

/// Scans (m, a) lines with s in [c, 1], keeping those whose trace-distance
/// and adjusted-geometric residuals both stay below tol over the full,
/// fully-physical segment. Survivors are clustered (connected components,
/// radius two grid steps) and returned as cluster-center LineSpecs.
std::vector<LineSpec> find_freezing_lines(int k, double c, double tol,
                                          const FreezingLineSearch& search);

struct OverlayPoint {
  double t = 0.0;
  double ci = 0.0;
  double cj = 0.0;
};

/// Projection of an evolve_c path onto the grid plane. The channel axis must
/// match the grid's fixed axis (std::invalid_argument otherwise).
std::vector<OverlayPoint> trajectory_overlay(const ContourGrid& grid,
                                             const BlochVector& c0,
                                             const ChannelSpec& channel,
                                             std::span<const double> t_grid);

}  // namespace qcorr
