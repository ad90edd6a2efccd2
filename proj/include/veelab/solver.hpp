#pragma once
// Recovery of multiplicity relations as zero loci of the quadratic 2-form
// residual.  With the string condition holding identically along a parameter
// path, commutativity holds exactly where that residual vanishes, so the
// relations are found by a grid scan with bisection on a signed surrogate,
// plus a Gauss-Newton refiner for families with several free parameters.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "veelab/catalog.hpp"
#include "veelab/config.hpp"
#include "veelab/errors.hpp"
#include "veelab/vee.hpp"

namespace veelab {

using ParameterPath = std::function<VectorConfig(double)>;

struct RelationScan {
  std::string target;     // builder name, empty for ad-hoc paths
  std::string free_name;  // varied parameter
  Params fixed;           // parameters held constant
  double lo = 0.0, hi = 0.0;
  std::vector<double> grid;                    // sample locations, ascending
  std::vector<double> residual;                // 2-form max-norm per sample
  std::vector<std::array<double, 2>> brackets; // sign-change cells
  std::vector<double> roots;                   // refined, ascending
};

namespace detail {

// Exact vectors only sharpen on-locus zeros; scans evaluate off-locus values,
// where rational arithmetic on bisection midpoints is pure cost.
inline VectorConfig numeric_view(const VectorConfig& cfg) {
  if (!cfg.exact()) return cfg;
  return build_numeric_config(cfg.dim, cfg.vecs, cfg.mults);
}

inline double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

inline RelationScan relation_scan(const ParameterPath& path, double lo, double hi, int grid_size,
                                  std::string target = {}, std::string free_name = {},
                                  Params fixed = {}) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    fail(errc::invalid_argument, "scan interval must be finite with lo < hi");
  if (grid_size < 8) fail(errc::invalid_argument, "scan grid needs at least 8 cells");

  RelationScan out;
  out.target = std::move(target);
  out.free_name = std::move(free_name);
  out.fixed = std::move(fixed);
  out.lo = lo;
  out.hi = hi;

  const auto tensor_at = [&](double t) {
    return condition2_tensor(detail::numeric_view(path(t)));
  };
  const auto max_norm = [](const Eigen::MatrixXcd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  };
  const auto residual_at = [&](double t) { return max_norm(tensor_at(t)); };

  const double mid = 0.5 * (lo + hi);
  {
    const VeeReport rep = trig_vee_residual(detail::numeric_view(path(mid)));
    if (!rep.verdict)
      fail(errc::condition_one_fails,
           "string condition fails along the path (residual " +
               std::to_string(rep.max_residual) + ")");
  }

  // Signed surrogate: the tensor component of largest magnitude at the
  // midpoint, kept fixed so its value varies continuously with the parameter.
  const Eigen::MatrixXcd tmid = tensor_at(mid);
  int pi = 0, pj = 0;
  double pbest = -1.0;
  for (int i = 0; i < tmid.rows(); ++i)
    for (int j = 0; j < tmid.cols(); ++j)
      if (std::abs(tmid(i, j)) > pbest) {
        pbest = std::abs(tmid(i, j));
        pi = i;
        pj = j;
      }
  const bool have_entry = tmid.size() > 0 && pbest > 0.0;

  const int n = grid_size;
  out.grid.resize(static_cast<size_t>(n) + 1);
  out.residual.resize(static_cast<size_t>(n) + 1);
  std::vector<double> s(static_cast<size_t>(n) + 1, 0.0);
  double imax = 0.0, smax = 0.0, rmax = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double t = lo + (hi - lo) * static_cast<double>(k) / n;
    const Eigen::MatrixXcd m = tensor_at(t);
    out.grid[static_cast<size_t>(k)] = t;
    out.residual[static_cast<size_t>(k)] = max_norm(m);
    rmax = std::max(rmax, out.residual[static_cast<size_t>(k)]);
    if (have_entry) {
      const cd z = m(pi, pj);
      s[static_cast<size_t>(k)] = z.real();
      imax = std::max(imax, std::abs(z.imag()));
      smax = std::max(smax, std::abs(z.real()));
    }
  }
  const bool signed_ok =
      have_entry && smax > 1e-12 * (1.0 + rmax) && imax <= 1e-8 * (1.0 + smax);

  const auto push_root = [&](double t) {
    for (double r : out.roots)
      if (std::abs(r - t) <= 1e-9 * (1.0 + std::abs(r))) return;
    if (residual_at(t) < 1e-10) out.roots.push_back(t);
  };

  const auto signed_at = [&](double t) { return tensor_at(t)(pi, pj).real(); };

  if (signed_ok) {
    for (int k = 0; k < n; ++k) {
      const double ta = out.grid[static_cast<size_t>(k)], tb = out.grid[static_cast<size_t>(k) + 1];
      double fa = s[static_cast<size_t>(k)], fb = s[static_cast<size_t>(k) + 1];
      if (fa == 0.0) {
        push_root(ta);
        continue;
      }
      if (k == n - 1 && fb == 0.0) push_root(tb);
      if (fa * fb >= 0.0) continue;
      out.brackets.push_back({ta, tb});
      double a = ta, b = tb, ga = fa, gb = fb;
      while (b - a > 1e-12) {
        const double m = 0.5 * (a + b);
        const double gm = signed_at(m);
        if (gm == 0.0) {
          a = b = m;
          ga = gb = 0.0;
          break;
        }
        if ((gm > 0) == (ga > 0)) {
          a = m;
          ga = gm;
        } else {
          b = m;
          gb = gm;
        }
      }
      // secant polish squeezes the residual well under the acceptance gate
      double x0 = a, x1 = b, g0 = ga, g1 = gb;
      for (int it = 0; it < 3 && g1 != g0; ++it) {
        const double x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
        if (!(x2 >= ta && x2 <= tb)) break;
        x0 = x1;
        g0 = g1;
        x1 = x2;
        g1 = signed_at(x2);
        if (g1 == 0.0) break;
      }
      push_root(std::abs(g1) <= std::abs(g0) ? x1 : x0);
    }
  }

  // Relations that touch zero without a sign change (perfect-square residual)
  // appear as interior minima: localize with golden section, then refine on
  // the parabola vertex of the most curved component, which is exact because
  // every component is a quadratic polynomial of the parameter.
  const auto near_known = [&](double t) {
    for (double r : out.roots)
      if (std::abs(r - t) <= (hi - lo) / n) return true;
    return false;
  };
  for (int k = 1; k < n; ++k) {
    const double mk = out.residual[static_cast<size_t>(k)];
    if (mk > out.residual[static_cast<size_t>(k) - 1] ||
        mk > out.residual[static_cast<size_t>(k) + 1])
      continue;
    const double ta = out.grid[static_cast<size_t>(k) - 1], tb = out.grid[static_cast<size_t>(k) + 1];
    if (near_known(out.grid[static_cast<size_t>(k)])) continue;
    double t0 = detail::golden_min(residual_at, ta, tb, 1e-6 * (1.0 + std::abs(ta) + std::abs(tb)));
    const double h = (hi - lo) / (n * 64.0);
    for (int it = 0; it < 2; ++it) {
      const Eigen::MatrixXcd m_minus = tensor_at(t0 - h), m_mid = tensor_at(t0),
                             m_plus = tensor_at(t0 + h);
      int vi = 0, vj = 0;
      double curv = -1.0;
      for (int i = 0; i < m_mid.rows(); ++i)
        for (int j = 0; j < m_mid.cols(); ++j) {
          const double c = std::abs(m_plus(i, j) - 2.0 * m_mid(i, j) + m_minus(i, j));
          if (c > curv) {
            curv = c;
            vi = i;
            vj = j;
          }
        }
      if (!(curv > 0.0)) break;
      const double sm = m_minus(vi, vj).real(), s0 = m_mid(vi, vj).real(),
                   sp = m_plus(vi, vj).real();
      const double denom = sp - 2.0 * s0 + sm;
      if (denom == 0.0) break;
      t0 = std::clamp(t0 - h * (sp - sm) / (2.0 * denom), ta, tb);
    }
    push_root(t0);
  }

  if (out.residual.front() < 1e-10) push_root(lo);
  if (out.residual.back() < 1e-10) push_root(hi);

  std::sort(out.roots.begin(), out.roots.end());
  if (out.roots.empty())
    fail(errc::no_root_in_interval, "2-form residual has no zero in the scanned interval");
  return out;
}

inline RelationScan relation_scan(const std::string& name, const Params& fixed,
                                  const std::string& free_name, double lo, double hi,
                                  int grid_size = 64) {
  const ParameterPath path = [name, fixed, free_name](double t) {
    Params p = fixed;
    p[free_name] = {t};
    return build_named(name, p);
  };
  return relation_scan(path, lo, hi, grid_size, name, free_name, fixed);
}

// Gauss-Newton on the scale-normalized 2-form components.  Normalizing by
// the squared multiplicity norm removes the residual's degree-2 homogeneity,
// so a free direction that only rescales the multiplicities has exactly no
// effect and surfaces as a singular Jacobian.
inline std::vector<double> newton_refine(const std::string& name, const Params& params,
                                         const std::vector<std::string>& free_names,
                                         std::vector<double> init) {
  if (free_names.empty()) fail(errc::invalid_argument, "need at least one free parameter");
  if (init.size() != free_names.size())
    fail(errc::invalid_argument, "init size differs from the free parameter count");

  const auto eval = [&](const std::vector<double>& theta) {
    Params p = params;
    for (size_t i = 0; i < free_names.size(); ++i) p[free_names[i]] = {theta[i]};
    const VectorConfig cfg = detail::numeric_view(build_named(name, p));
    const Eigen::MatrixXcd t = condition2_tensor(cfg);
    double c2 = 0.0;
    for (const cd& c : cfg.mults) c2 += std::norm(c);
    const double scale = std::max(c2, 1e-12);
    Eigen::VectorXd f(2 * t.size());
    for (long k = 0; k < t.size(); ++k) {
      f(2 * k) = t.data()[static_cast<size_t>(k)].real() / scale;
      f(2 * k + 1) = t.data()[static_cast<size_t>(k)].imag() / scale;
    }
    return f;
  };

  std::vector<double> theta = std::move(init);
  const int nfree = static_cast<int>(free_names.size());
  const double h = 1e-6;
  for (int iter = 0; iter < 25; ++iter) {
    const Eigen::VectorXd f0 = eval(theta);
    if (!f0.allFinite()) fail(errc::diverged, "residual is not finite");
    const double res = f0.size() == 0 ? 0.0 : f0.cwiseAbs().maxCoeff();
    if (res < 1e-11) return theta;

    Eigen::MatrixXd jac(f0.size(), nfree);
    for (int i = 0; i < nfree; ++i) {
      std::vector<double> tp = theta, tm = theta;
      tp[static_cast<size_t>(i)] += h;
      tm[static_cast<size_t>(i)] -= h;
      jac.col(i) = (eval(tp) - eval(tm)) / (2.0 * h);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-8);
    // Families whose tensor is a scalar function times a constant matrix have
    // parallel Jacobian columns at every point; the truncated pseudo-inverse
    // still descends along the effective direction.  Only a Jacobian with no
    // effective direction at all (scale-like or inert free parameters, which
    // the normalization nulls exactly) is an error.
    const double sig = jac.size() == 0 ? 0.0 : svd.singularValues()(0);
    if (iter == 0 && sig <= 1e-6 * res)
      fail(errc::singular_jacobian, "no free direction changes the normalized residual");
    const Eigen::VectorXd step = svd.solve(-f0);
    if (!step.allFinite()) fail(errc::diverged, "refinement step is not finite");
    for (int i = 0; i < nfree; ++i) theta[static_cast<size_t>(i)] += step(i);
  }
  fail(errc::diverged, "no convergence after 25 iterations");
}

}  // namespace veelab
