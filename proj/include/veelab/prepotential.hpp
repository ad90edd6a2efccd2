#pragma once
// Third-derivative tensors F_ijk = sum_a c_a a_i a_j a_k k((a,x)) of the
// trigonometric (k = cot) and rational (k = 2/z) prepotentials, pole-aware
// seeded sampling, and the commutativity / WDVV residuals.

#include <veelab/config.hpp>
#include <veelab/errors.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace veelab {

struct Kernel {
  enum class Tag { trig, rational, custom } tag = Tag::trig;
  std::function<cd(cd)> fn;  // custom only

  static Kernel trig() { return Kernel{Tag::trig, nullptr}; }
  static Kernel rational() { return Kernel{Tag::rational, nullptr}; }
  static Kernel custom(std::function<cd(cd)> f) { return Kernel{Tag::custom, std::move(f)}; }

  cd operator()(cd z) const {
    switch (tag) {
      case Tag::trig:
        return std::cos(z) / std::sin(z);
      case Tag::rational:
        return 2.0 / z;
      case Tag::custom:
        return fn(z);
    }
    return cd(0);
  }

  // Distance-to-pole measure: |sin z| puts the trig poles at pi Z; custom
  // kernels are only guarded against z = 0, like the rational one.
  double clearance(cd z) const { return tag == Tag::trig ? std::abs(std::sin(z)) : std::abs(z); }
};

struct PointSample {
  Eigen::VectorXcd x;
  std::uint64_t seed = 0;
  double clearance = 0.0;
};

struct DerivativeTensor {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> f;  // f[i](j, k) = F_{ijk}
  Eigen::VectorXcd x;
};

inline double pole_clearance(const VectorConfig& cfg, const Kernel& k, const Eigen::VectorXcd& x) {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& v : cfg.vecs) out = std::min(out, k.clearance(inner(v, x)));
  return out;
}

// Deterministic rejection sampling: components uniform in [-1,1] + i[-1,1],
// kept once every (a, x) stays at least delta_pole away from a kernel pole.
inline std::vector<PointSample> sample_points(const VectorConfig& cfg, const Kernel& k, int count,
                                              std::uint64_t seed) {
  if (count < 1) fail(errc::invalid_argument, "point count must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<PointSample> out;
  for (int p = 0; p < count; ++p) {
    bool accepted = false;
    for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
      Eigen::VectorXcd x(cfg.dim);
      for (int i = 0; i < cfg.dim; ++i) {
        const double re = u(rng), im = u(rng);
        x[i] = cd(re, im);
      }
      const double clear = pole_clearance(cfg, k, x);
      if (clear >= tol::pole_clearance) {
        out.push_back({std::move(x), seed, clear});
        accepted = true;
      }
    }
    if (!accepted)
      fail(errc::sampling_exhausted,
           "no point with pole clearance " + std::to_string(tol::pole_clearance) +
               " found in 1000 draws");
  }
  return out;
}

// Each independent entry w c_a a_i a_j a_k is computed once and written to all
// six index positions, so total symmetry holds bitwise.
inline DerivativeTensor third_derivative_tensor(const VectorConfig& cfg, const Kernel& k,
                                                const Eigen::VectorXcd& x) {
  if (x.size() != cfg.dim) fail(errc::dimension_mismatch, "point dimension differs from config");
  DerivativeTensor t;
  t.dim = cfg.dim;
  t.x = x;
  t.f.assign(static_cast<size_t>(cfg.dim), Eigen::MatrixXcd::Zero(cfg.dim, cfg.dim));
  for (int a = 0; a < cfg.size(); ++a) {
    const Eigen::VectorXcd& v = cfg.vecs[static_cast<size_t>(a)];
    const cd z = inner(v, x);
    if (k.clearance(z) < tol::pole_eval)
      fail(errc::pole_hit, "evaluation point lies on a kernel pole (vector " + std::to_string(a) + ")");
    const cd w = cfg.mults[static_cast<size_t>(a)] * k(z);
    for (int i = 0; i < cfg.dim; ++i)
      for (int j = i; j < cfg.dim; ++j)
        for (int l = j; l < cfg.dim; ++l) {
          const cd term = w * v[i] * v[j] * v[l];
          t.f[static_cast<size_t>(i)](j, l) += term;
          if (l != j) t.f[static_cast<size_t>(i)](l, j) += term;
          if (i != j) {
            t.f[static_cast<size_t>(j)](i, l) += term;
            if (l != i) t.f[static_cast<size_t>(j)](l, i) += term;
          }
          if (l != i && l != j) {
            t.f[static_cast<size_t>(l)](i, j) += term;
            if (j != i) t.f[static_cast<size_t>(l)](j, i) += term;
          }
        }
  }
  return t;
}

// max over i<j of ||F_i F_j - F_j F_i|| / (1 + ||F_i|| ||F_j||).
inline double commutativity_residual(const DerivativeTensor& t) {
  double out = 0.0;
  for (int i = 0; i < t.dim; ++i)
    for (int j = i + 1; j < t.dim; ++j) {
      const auto& fi = t.f[static_cast<size_t>(i)];
      const auto& fj = t.f[static_cast<size_t>(j)];
      const double r = (fi * fj - fj * fi).norm() / (1.0 + fi.norm() * fj.norm());
      out = std::max(out, r);
    }
  return out;
}

inline double metric_condition(const Eigen::MatrixXcd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
  const auto& sv = svd.singularValues();
  return sv[sv.size() - 1] <= 0.0 ? std::numeric_limits<double>::infinity()
                                  : sv[0] / sv[sv.size() - 1];
}

// max over i<j of ||F_i B^-1 F_j - F_j B^-1 F_i|| normalized by the term
// magnitudes; with B = I this reduces bitwise to commutativity_residual.
inline double wdvv_residual(const DerivativeTensor& t, const Eigen::MatrixXcd& b) {
  if (b.rows() != t.dim || b.cols() != t.dim)
    fail(errc::dimension_mismatch, "metric dimension differs from tensor");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
  const auto& sv = svd.singularValues();
  if (sv[sv.size() - 1] < 1e-12 * sv[0])
    fail(errc::singular_metric, "metric is singular at working precision");

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(b);
  std::vector<Eigen::MatrixXcd> binv_f(static_cast<size_t>(t.dim));
  for (int i = 0; i < t.dim; ++i) binv_f[static_cast<size_t>(i)] = lu.solve(t.f[static_cast<size_t>(i)]);

  double out = 0.0;
  for (int i = 0; i < t.dim; ++i)
    for (int j = i + 1; j < t.dim; ++j) {
      const auto& fi = t.f[static_cast<size_t>(i)];
      const auto& fj = t.f[static_cast<size_t>(j)];
      const double r = (fi * binv_f[static_cast<size_t>(j)] - fj * binv_f[static_cast<size_t>(i)]).norm() /
                       (1.0 + fi.norm() * binv_f[static_cast<size_t>(j)].norm());
      out = std::max(out, r);
    }
  return out;
}

}  // namespace veelab
