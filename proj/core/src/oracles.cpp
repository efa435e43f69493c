#include "qcorr/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qcorr {

namespace detail {

namespace {

Vec3 from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, int iters,
                                     std::uint64_t& evals) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  evals += 2;
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
    ++evals;
  }
  return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

double entropy4(const Matrix4c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m, Eigen::EigenvaluesOnly);
  return entropy_bits(es.eigenvalues().cwiseMax(0.0));
}

double entropy2(const Matrix2c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(m, Eigen::EigenvaluesOnly);
  return entropy_bits(es.eigenvalues().cwiseMax(0.0));
}

}  // namespace

Matrix4c direction_projector(const Vec3& n, bool plus) {
  Matrix2c k = Matrix2c::Zero();
  for (int i = 0; i < 3; ++i) k += n[i] * pauli(i);
  const Matrix2c p =
      0.5 * (Matrix2c::Identity() + (plus ? 1.0 : -1.0) * k);
  return kron2(p, Matrix2c::Identity());
}

Matrix4c post_measurement(const Matrix4c& rho, const Vec3& n) {
  const Matrix4c pp = direction_projector(n, true);
  const Matrix4c pm = direction_projector(n, false);
  return pp * rho * pp + pm * rho * pm;
}

SphereMinResult minimize_on_sphere(const std::function<double(const Vec3&)>& f,
                                   int coarse_points, int refine_iterations,
                                   double tol) {
  SphereMinResult res;
  coarse_points = std::max(coarse_points, 1);

  constexpr double golden_angle = 2.3999632297286533;  // pi (3 - sqrt 5)
  double best = std::numeric_limits<double>::infinity();
  Vec3 best_n{0.0, 0.0, 1.0};
  for (int i = 0; i < coarse_points; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / coarse_points;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double ph = golden_angle * i;
    const Vec3 n{r * std::cos(ph), r * std::sin(ph), z};
    const double v = f(n);
    ++res.evaluations;
    if (v < best) {
      best = v;
      best_n = n;
    }
  }

  double theta = std::acos(std::clamp(best_n[2], -1.0, 1.0));
  double phi = std::atan2(best_n[1], best_n[0]);
  double delta = 2.0 * std::sqrt(4.0 * std::numbers::pi / coarse_points);
  double last_gain = std::numeric_limits<double>::infinity();
  for (int it = 0; it < refine_iterations; ++it) {
    const double before = best;
    auto f_theta = [&](double t) { return f(from_angles(t, phi)); };
    auto [t_best, t_val] =
        golden_min(f_theta, theta - delta, theta + delta, 24, res.evaluations);
    if (t_val < best) {
      best = t_val;
      theta = t_best;
    }
    auto f_phi = [&](double q) { return f(from_angles(theta, q)); };
    auto [p_best, p_val] =
        golden_min(f_phi, phi - delta, phi + delta, 24, res.evaluations);
    if (p_val < best) {
      best = p_val;
      phi = p_best;
    }
    last_gain = before - best;
    delta *= 0.5;
    if (delta < 1e-10) break;
  }
  res.n = from_angles(theta, phi);
  res.value = best;
  res.converged = last_gain <= tol;
  return res;
}

}  // namespace detail

namespace {

using detail::golden_min;

void require_valid(const TwoQubitDensity& rho, const char* what) {
  if (!rho.is_valid())
    throw std::domain_error(std::string(what) + ": invalid density matrix");
}

struct MutualInfo {
  double s_ab = 0.0;
  double mutual = 0.0;
};

MutualInfo mutual_info(const Matrix4c& m) {
  MutualInfo mi;
  mi.s_ab = detail::entropy4(m);
  mi.mutual = detail::entropy2(detail::partial_trace_b(m)) +
              detail::entropy2(detail::partial_trace_a(m)) - mi.s_ab;
  return mi;
}

OracleResult measurement_search(const TwoQubitDensity& rho,
                                const SearchBudget& budget, bool deficit) {
  require_valid(rho, deficit ? "measurement_deficit" : "measurement_discord");
  const Matrix4c& m = rho.matrix();
  const MutualInfo base = mutual_info(m);

  auto objective = [&](const Vec3& n) {
    const Matrix4c post = detail::post_measurement(m, n);
    if (deficit) return detail::entropy4(post) - base.s_ab;
    return base.mutual - mutual_info(post).mutual;
  };
  const auto r = detail::minimize_on_sphere(objective, budget.coarse_grid_points,
                                            budget.refinement_iterations,
                                            budget.tolerance);
  OracleResult out;
  out.value = r.value;
  out.direction = r.n;
  out.converged = r.converged;
  out.evaluations = r.evaluations;
  return out;
}

// 9-parameter encoding of CQStateParams, smooth and unconstrained:
// (theta, phi) of e; p = sin^2(w); each r as spherical angles plus a folded
// radius sin^2(u). Clamp/projection encodings leave flat directions that
// stall descent when an optimum sits on the ball boundary.
using ParamVec = std::array<double, 9>;

CQStateParams decode_params(const ParamVec& x) {
  CQStateParams p;
  p.e = detail::from_angles(x[0], x[1]);
  const double sp = std::sin(x[2]);
  p.p = sp * sp;
  auto ball_point = [](double theta, double phi, double u) {
    const double s = std::sin(u);
    const Vec3 dir = detail::from_angles(theta, phi);
    return Vec3{s * s * dir[0], s * s * dir[1], s * s * dir[2]};
  };
  p.r1 = ball_point(x[3], x[4], x[5]);
  p.r2 = ball_point(x[6], x[7], x[8]);
  return p;
}

constexpr ParamVec kInitialStep = {0.5, 0.8, 0.4, 0.5, 0.8,
                                   0.4, 0.5, 0.8, 0.4};

template <class Obj>
std::pair<double, ParamVec> pattern_phase(Obj&& f, ParamVec x, double fx,
                                          ParamVec step, int max_sweeps,
                                          double step_tol, Rng& rng,
                                          std::uint64_t& evals,
                                          bool& converged) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (int i = 0; i < 9; ++i) {
      for (double sgn : {1.0, -1.0}) {
        ParamVec xt = x;
        xt[i] += sgn * step[i];
        const double ft = f(xt);
        ++evals;
        if (ft < fx - 1e-15) {
          x = xt;
          fx = ft;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      // a few random diagonal probes before shrinking; escapes axis-aligned
      // stalls in curved valleys
      for (int probe = 0; probe < 6 && !improved; ++probe) {
        ParamVec xt = x;
        for (int i = 0; i < 9; ++i) xt[i] += unit(rng) * step[i];
        const double ft = f(xt);
        ++evals;
        if (ft < fx - 1e-15) {
          x = xt;
          fx = ft;
          improved = true;
        }
      }
    }
    if (!improved) {
      double max_step = 0.0;
      for (double& s : step) {
        s *= 0.5;
        max_step = std::max(max_step, s);
      }
      if (max_step < step_tol) {
        converged = true;
        return {fx, x};
      }
    }
  }
  return {fx, x};
}

template <class Obj>
std::pair<double, ParamVec> pattern_descent(Obj&& f, ParamVec x, int max_sweeps,
                                            double step_tol, Rng& rng,
                                            std::uint64_t& evals,
                                            bool& converged) {
  double fx = f(x);
  ++evals;
  converged = false;
  return pattern_phase(f, x, fx, kInitialStep, max_sweeps, step_tol, rng,
                       evals, converged);
}

// Nelder-Mead polish: axis-aligned pattern steps crawl along the curved
// valleys where the e angles couple to r1/r2, a simplex does not
template <class Obj>
std::pair<double, ParamVec> simplex_polish(Obj&& f, const ParamVec& x0,
                                           double f0, std::uint64_t& evals) {
  constexpr int n = 9;
  struct Vertex {
    ParamVec x;
    double value;
  };
  std::array<Vertex, n + 1> simplex;
  simplex[0] = {x0, f0};
  for (int i = 0; i < n; ++i) {
    ParamVec x = x0;
    x[i] += 0.05;
    simplex[i + 1] = {x, f(x)};
    ++evals;
  }
  auto by_value = [](const Vertex& a, const Vertex& b) {
    return a.value < b.value;
  };
  for (int iter = 0; iter < 4000; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    if (simplex[n].value - simplex[0].value < 1e-13) break;

    ParamVec centroid{};
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / n;
    auto along = [&](double t) {
      ParamVec x;
      for (int i = 0; i < n; ++i)
        x[i] = centroid[i] + t * (simplex[n].x[i] - centroid[i]);
      return x;
    };

    const ParamVec reflected = along(-1.0);
    const double fr = f(reflected);
    ++evals;
    if (fr < simplex[0].value) {
      const ParamVec expanded = along(-2.0);
      const double fe = f(expanded);
      ++evals;
      simplex[n] = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
      continue;
    }
    if (fr < simplex[n - 1].value) {
      simplex[n] = {reflected, fr};
      continue;
    }
    const ParamVec contracted = along(0.5);
    const double fc = f(contracted);
    ++evals;
    if (fc < simplex[n].value) {
      simplex[n] = {contracted, fc};
      continue;
    }
    for (int v = 1; v <= n; ++v) {  // shrink toward the best vertex
      for (int i = 0; i < n; ++i)
        simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
      simplex[v].value = f(simplex[v].x);
      ++evals;
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex[0].value, simplex[0].x};
}

}  // namespace

OracleResult measurement_discord(const TwoQubitDensity& rho,
                                 const SearchBudget& budget) {
  return measurement_search(rho, budget, false);
}

OracleResult measurement_deficit(const TwoQubitDensity& rho,
                                 const SearchBudget& budget) {
  return measurement_search(rho, budget, true);
}

OracleResult min_distance_cq(const TwoQubitDensity& rho, CqMetric metric,
                             const SearchBudget& budget) {
  require_valid(rho, "min_distance_cq");
  const Matrix4c& m = rho.matrix();

  // relative entropy: Tr[rho log2 rho] once; per-candidate only the sigma
  // eigendecomposition is needed since sum_i p_i |u_i><u_i| = rho.
  double rho_log_rho = 0.0;
  if (metric == CqMetric::relative_entropy) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 4; ++i) {
      const double p = std::max(es.eigenvalues()[i], 0.0);
      if (p > 1e-15) rho_log_rho += p * std::log2(p);
    }
  }
  constexpr double kEps = 1e-9;

  auto objective = [&](const ParamVec& x) {
    const Matrix4c chi = cq_density(decode_params(x)).matrix();
    switch (metric) {
      case CqMetric::trace: {
        Eigen::SelfAdjointEigenSolver<Matrix4c> es(m - chi,
                                                   Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().sum();
      }
      case CqMetric::hilbert_schmidt:
        return (m - chi).squaredNorm();
      case CqMetric::relative_entropy: {
        const Matrix4c full_rank =
            (1.0 - kEps) * chi + kEps * 0.25 * Matrix4c::Identity();
        Eigen::SelfAdjointEigenSolver<Matrix4c> es(full_rank);
        double cross = 0.0;
        for (int j = 0; j < 4; ++j) {
          const double q = std::max(es.eigenvalues()[j], kEps * 0.25);
          const Eigen::Vector4cd v = es.eigenvectors().col(j);
          const double w = std::real(v.dot(m * v));
          cross += std::max(w, 0.0) * std::log2(q);
        }
        return rho_log_rho - cross;
      }
    }
    return 0.0;
  };

  Rng rng(budget.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> upm(-1.0, 1.0);
  std::uniform_real_distribution<double> uphi(0.0, 2.0 * std::numbers::pi);

  const int starts = std::max(budget.coarse_grid_points, 1);
  struct Candidate {
    double value;
    ParamVec x;
    bool converged;
  };
  std::vector<Candidate> best;  // ascending by value, at most 3 entries
  OracleResult out;
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  for (int s = 0; s < starts; ++s) {
    ParamVec x0;
    x0[0] = std::acos(std::clamp(upm(rng), -1.0, 1.0));
    x0[1] = uphi(rng);
    x0[2] = u01(rng) * kHalfPi;
    for (int r = 0; r < 2; ++r) {
      x0[3 + 3 * r] = std::acos(std::clamp(upm(rng), -1.0, 1.0));
      x0[4 + 3 * r] = uphi(rng);
      x0[5 + 3 * r] = u01(rng) * kHalfPi;
    }
    bool converged = false;
    auto [value, x] = pattern_descent(objective, x0, budget.refinement_iterations,
                                      1e-7, rng, out.evaluations, converged);
    const auto pos = std::upper_bound(
        best.begin(), best.end(), value,
        [](double v, const Candidate& c) { return v < c.value; });
    best.insert(pos, {value, x, converged});
    if (best.size() > 3) best.pop_back();
  }

  out.value = std::numeric_limits<double>::infinity();
  for (const Candidate& candidate : best) {
    auto [value, x] = simplex_polish(objective, candidate.x, candidate.value,
                                     out.evaluations);
    if (value < out.value) {
      out.value = value;
      out.argmin = decode_params(x);
      out.converged = candidate.converged;
    }
  }
  return out;
}

OracleResult fmax_cq_search(const TwoQubitDensity& rho,
                            const SearchBudget& budget) {
  require_valid(rho, "fmax_cq_search");
  const Matrix4c sqrt_rho = detail::hermitian_sqrt(rho.matrix());
  std::uint64_t evals = 0;

  auto fidelity_of = [&](const CQStateParams& p) {
    return detail::fidelity_with_sqrt(sqrt_rho, cq_density(p).matrix());
  };

  // phase (i): one-parameter BD CQ family per axis
  double best_family = -1.0;
  CQStateParams best_params;
  for (int axis = 0; axis < 3; ++axis) {
    auto family = [&](double s) {
      CQStateParams p;
      p.e = Vec3{};
      p.e[axis] = 1.0;
      p.p = 0.5;
      p.r1 = Vec3{};
      p.r2 = Vec3{};
      p.r1[axis] = s;
      p.r2[axis] = -s;
      return p;
    };
    auto neg = [&](double s) { return -fidelity_of(family(s)); };
    auto [s_best, neg_best] =
        golden_min(neg, -1.0, 1.0, std::max(budget.refinement_iterations, 60),
                   evals);
    if (-neg_best > best_family) {
      best_family = -neg_best;
      best_params = family(s_best);
    }
  }

  // phase (ii): random CQ states must not beat the BD family
  Rng rng(budget.seed);
  double best_random = -1.0;
  for (int i = 0; i < budget.coarse_grid_points; ++i) {
    const double f = fidelity_of(sample_cq(rng));
    ++evals;
    best_random = std::max(best_random, f);
  }
  if (best_random > best_family + budget.tolerance)
    throw std::logic_error(
        "fmax_cq_search: a random CQ state exceeded the BD-family optimum "
        "beyond tolerance");

  OracleResult out;
  out.value = std::max(best_family, best_random);
  out.argmin = best_params;
  out.converged = true;
  out.evaluations = evals;
  return out;
}

double skew_info(const TwoQubitDensity& rho, const Matrix4c& k) {
  if ((k - k.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::domain_error("skew_info: observable is not Hermitian");
  require_valid(rho, "skew_info");
  const Matrix4c a = detail::hermitian_sqrt(rho.matrix());
  const double quad = (rho.matrix() * k * k).trace().real();
  const double twisted = (a * k * a * k).trace().real();
  return std::max(0.0, quad - twisted);
}

Vec3 sample_unit_vector(Rng& rng) {
  std::uniform_real_distribution<double> upm(-1.0, 1.0);
  std::uniform_real_distribution<double> uphi(0.0, 2.0 * std::numbers::pi);
  const double z = upm(rng);
  const double phi = uphi(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

Vec3 sample_ball_vector(Rng& rng) {
  std::uniform_real_distribution<double> upm(-1.0, 1.0);
  while (true) {
    const Vec3 v{upm(rng), upm(rng), upm(rng)};
    if (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] <= 1.0) return v;
  }
}

BlochVector sample_physical_bloch(Rng& rng) {
  std::uniform_real_distribution<double> upm(-1.0, 1.0);
  while (true) {
    const BlochVector c{upm(rng), upm(rng), upm(rng)};
    if (is_physical(c)) return c;
  }
}

TwoQubitDensity sample_density(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix4c ginibre;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      ginibre(i, j) = std::complex<double>(re, im);
    }
  Matrix4c m = ginibre * ginibre.adjoint();
  m /= m.trace().real();
  return TwoQubitDensity(m);
}

CQStateParams sample_cq(Rng& rng) {
  CQStateParams p;
  p.e = sample_unit_vector(rng);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  p.p = u01(rng);
  p.r1 = sample_ball_vector(rng);
  p.r2 = sample_ball_vector(rng);
  return p;
}

}  // namespace qcorr
