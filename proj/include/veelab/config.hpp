#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <variant>
#include <vector>

#include "veelab/exact.hpp"

namespace veelab {

using cd = std::complex<double>;
using ExactVector = std::vector<ExactScalar>;

namespace tol {
inline constexpr double collinear = 1e-10;     // numeric collinearity / merge
inline constexpr double string_int = 1e-8;     // integer multiple test in strings
inline constexpr double cluster = 1e-8;        // eigenvalue clustering (after |M| = 1)
inline constexpr double pole_clearance = 1e-2; // sampling clearance from kernel poles
inline constexpr double pole_eval = 1e-14;     // hard pole guard at evaluation
inline constexpr double rank_rel = 1e-10;      // SVD rank threshold, relative to sigma_max
inline constexpr double metric_rel = 1e-12;    // singular-metric threshold
inline constexpr double plane_key = 1e-9;      // numeric 2-plane dedup granularity
inline constexpr double tangency = 1e-9;
}  // namespace tol

enum class ScalarMode { exact, numeric };

/// A finite covector configuration with complex multiplicities.
/// Numeric coordinates are always populated; exact-mode configs carry the
/// Q(sqrt2,sqrt3) coordinates too and exact predicates use them.
struct VectorConfig {
  int dim = 0;
  ScalarMode mode = ScalarMode::numeric;
  std::vector<ExactVector> evecs;      // parallel to vecs when mode == exact
  std::vector<Eigen::VectorXcd> vecs;
  std::vector<cd> mults;

  bool exact() const { return mode == ScalarMode::exact; }
  int size() const { return static_cast<int>(vecs.size()); }
};

using ScalarLit = std::variant<double, ExactScalar>;

inline Eigen::VectorXcd to_numeric(const ExactVector& v) {
  Eigen::VectorXcd out(static_cast<long>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<long>(i)] = cd(v[i].to_double(), 0.0);
  return out;
}

inline bool exact_is_zero(const ExactVector& v) {
  return std::all_of(v.begin(), v.end(), [](const ExactScalar& s) { return s.is_zero(); });
}

inline VectorConfig build_exact_config(int dim, std::vector<ExactVector> vectors, std::vector<cd> mults) {
  if (dim < 1) fail(errc::dimension_mismatch, "dimension must be positive");
  if (vectors.size() != mults.size()) fail(errc::dimension_mismatch, "multiplicity count differs from vector count");
  VectorConfig cfg;
  cfg.dim = dim;
  cfg.mode = ScalarMode::exact;
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != dim) fail(errc::dimension_mismatch, "vector length differs from dim");
    if (exact_is_zero(v)) fail(errc::zero_vector, "zero vector in configuration");
    cfg.vecs.push_back(to_numeric(v));
  }
  cfg.evecs = std::move(vectors);
  cfg.mults = std::move(mults);
  return cfg;
}

inline VectorConfig build_numeric_config(int dim, std::vector<Eigen::VectorXcd> vectors, std::vector<cd> mults) {
  if (dim < 1) fail(errc::dimension_mismatch, "dimension must be positive");
  if (vectors.size() != mults.size()) fail(errc::dimension_mismatch, "multiplicity count differs from vector count");
  VectorConfig cfg;
  cfg.dim = dim;
  cfg.mode = ScalarMode::numeric;
  for (const auto& v : vectors) {
    if (v.size() != dim) fail(errc::dimension_mismatch, "vector length differs from dim");
    if (v.norm() == 0.0) fail(errc::zero_vector, "zero vector in configuration");
  }
  cfg.vecs = std::move(vectors);
  cfg.mults = std::move(mults);
  return cfg;
}

/// Mode is decided by the literals: all exact or all numeric, never mixed.
inline VectorConfig build_config(int dim, const std::vector<std::vector<ScalarLit>>& vectors,
                                 std::vector<cd> mults) {
  bool any_exact = false, any_numeric = false;
  for (const auto& v : vectors)
    for (const auto& comp : v)
      (std::holds_alternative<ExactScalar>(comp) ? any_exact : any_numeric) = true;
  if (any_exact && any_numeric)
    fail(errc::mixed_scalar_mode, "configuration mixes exact and numeric components");
  if (any_exact) {
    std::vector<ExactVector> evs;
    evs.reserve(vectors.size());
    for (const auto& v : vectors) {
      ExactVector ev;
      ev.reserve(v.size());
      for (const auto& comp : v) ev.push_back(std::get<ExactScalar>(comp));
      evs.push_back(std::move(ev));
    }
    return build_exact_config(dim, std::move(evs), std::move(mults));
  }
  std::vector<Eigen::VectorXcd> nvs;
  nvs.reserve(vectors.size());
  for (const auto& v : vectors) {
    Eigen::VectorXcd nv(static_cast<long>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) nv[static_cast<long>(i)] = cd(std::get<double>(v[i]), 0.0);
    nvs.push_back(std::move(nv));
  }
  return build_numeric_config(dim, std::move(nvs), std::move(mults));
}

// --------------------------------------------------------------------------
// bilinear pairing and wedge
// --------------------------------------------------------------------------

/// Bilinear (not Hermitian) pairing: sum_i u_i v_i.
inline cd inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  return (u.array() * v.array()).sum();
}

inline ExactScalar inner_exact(const ExactVector& u, const ExactVector& v) {
  ExactScalar s;
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

/// (u wedge v)_{ij} = u_i v_j - u_j v_i.
inline Eigen::MatrixXcd wedge_matrix(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  return u * v.transpose() - v * u.transpose();
}

// --------------------------------------------------------------------------
// collinear classes
// --------------------------------------------------------------------------

struct CollinearClass {
  int rep = 0;                  // first member in input order; its ratio is 1
  std::vector<int> members;     // ascending input indices
  std::vector<cd> ratios;       // gamma = ratio * alpha0, parallel to members
  cd c_value{0.0, 0.0};         // sum of c_gamma * ratio^2 over the class
};

namespace detail {

inline std::optional<ExactScalar> exact_ratio(const ExactVector& gamma, const ExactVector& alpha0) {
  size_t j = 0;
  while (j < alpha0.size() && alpha0[j].is_zero()) ++j;
  ExactScalar k = gamma[j] / alpha0[j];
  for (size_t i = 0; i < alpha0.size(); ++i)
    if (gamma[i] != k * alpha0[i]) return std::nullopt;
  return k;
}

inline std::optional<cd> numeric_ratio(const Eigen::VectorXcd& gamma, const Eigen::VectorXcd& alpha0) {
  long j = 0;
  alpha0.cwiseAbs().maxCoeff(&j);
  cd k = gamma[j] / alpha0[j];
  if ((gamma - k * alpha0).norm() > tol::collinear * gamma.norm()) return std::nullopt;
  return k;
}

}  // namespace detail

/// Ratio gamma/alpha0 if the two are collinear (exact in exact mode).
inline std::optional<cd> collinear_ratio(const VectorConfig& cfg, int gamma, int alpha0) {
  if (cfg.exact()) {
    auto k = detail::exact_ratio(cfg.evecs[gamma], cfg.evecs[alpha0]);
    if (!k) return std::nullopt;
    return cd(k->to_double(), 0.0);
  }
  return detail::numeric_ratio(cfg.vecs[gamma], cfg.vecs[alpha0]);
}

inline std::vector<CollinearClass> collinear_classes(const VectorConfig& cfg) {
  std::vector<CollinearClass> out;
  std::vector<int> owner(cfg.size(), -1);
  for (int i = 0; i < cfg.size(); ++i) {
    if (owner[i] >= 0) continue;
    CollinearClass cls;
    cls.rep = i;
    cls.members.push_back(i);
    cls.ratios.push_back(cd(1.0, 0.0));
    owner[i] = static_cast<int>(out.size());
    for (int j = i + 1; j < cfg.size(); ++j) {
      if (owner[j] >= 0) continue;
      if (auto k = collinear_ratio(cfg, j, i)) {
        owner[j] = owner[i];
        cls.members.push_back(j);
        cls.ratios.push_back(*k);
      }
    }
    for (size_t t = 0; t < cls.members.size(); ++t)
      cls.c_value += cfg.mults[cls.members[t]] * cls.ratios[t] * cls.ratios[t];
    out.push_back(std::move(cls));
  }
  return out;
}

/// Index of the collinear class containing vector idx.
inline int class_of(const std::vector<CollinearClass>& classes, int idx) {
  for (size_t i = 0; i < classes.size(); ++i)
    for (int m : classes[i].members)
      if (m == idx) return static_cast<int>(i);
  return -1;
}

// --------------------------------------------------------------------------
// half-space normalization
// --------------------------------------------------------------------------

namespace detail {

inline bool should_flip_exact(const ExactVector& v) {
  for (const auto& comp : v)
    if (!comp.is_zero()) return exact_sign(comp) < 0;
  return false;
}

inline bool should_flip_numeric(const Eigen::VectorXcd& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (long i = 0; i < v.size(); ++i) {
    const cd z = v[i];
    if (std::abs(z) <= 1e-12 * scale) continue;
    if (std::abs(z.real()) > 1e-12 * std::abs(z)) return z.real() < 0;
    return z.imag() < 0;
  }
  return false;
}

}  // namespace detail

/// Flips vectors into the fixed half-space (first significant coordinate
/// positive), merges duplicates by summing multiplicities and drops exact-zero
/// merged multiplicities. Idempotent; first-occurrence order is kept.
inline VectorConfig positive_normalize(const VectorConfig& cfg) {
  VectorConfig flipped = cfg;
  for (int i = 0; i < cfg.size(); ++i) {
    const bool flip = cfg.exact() ? detail::should_flip_exact(cfg.evecs[i])
                                  : detail::should_flip_numeric(cfg.vecs[i]);
    if (flip) {
      flipped.vecs[i] = -flipped.vecs[i];
      if (cfg.exact())
        for (auto& comp : flipped.evecs[i]) comp = -comp;
    }
  }
  VectorConfig out;
  out.dim = cfg.dim;
  out.mode = cfg.mode;
  std::vector<bool> used(cfg.size(), false);
  for (int i = 0; i < cfg.size(); ++i) {
    if (used[i]) continue;
    cd mult = flipped.mults[i];
    for (int j = i + 1; j < cfg.size(); ++j) {
      if (used[j]) continue;
      const bool same = cfg.exact()
          ? flipped.evecs[i] == flipped.evecs[j]
          : (flipped.vecs[i] - flipped.vecs[j]).norm() <=
                tol::collinear * std::max(1.0, flipped.vecs[i].norm());
      if (same) {
        used[j] = true;
        mult += flipped.mults[j];
      }
    }
    if (mult == cd(0.0, 0.0)) continue;
    out.vecs.push_back(flipped.vecs[i]);
    if (cfg.exact()) out.evecs.push_back(flipped.evecs[i]);
    out.mults.push_back(mult);
  }
  return out;
}

// --------------------------------------------------------------------------
// gram operator
// --------------------------------------------------------------------------

/// M = sum_beta c_beta beta beta^T (bilinear outer products).
inline Eigen::MatrixXcd gram_operator(const VectorConfig& cfg) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cfg.dim, cfg.dim);
  for (int i = 0; i < cfg.size(); ++i)
    m += cfg.mults[i] * (cfg.vecs[i] * cfg.vecs[i].transpose());
  return m;
}

/// Exact gram operator; multiplicities (dyadic doubles) are promoted exactly.
inline std::vector<std::vector<ExactComplex>> gram_operator_exact(const VectorConfig& cfg) {
  if (!cfg.exact()) fail(errc::invalid_argument, "gram_operator_exact requires an exact-mode config");
  std::vector<std::vector<ExactComplex>> m(cfg.dim, std::vector<ExactComplex>(cfg.dim));
  for (int t = 0; t < cfg.size(); ++t) {
    ExactComplex c = ExactComplex::from(cfg.mults[t]);
    for (int i = 0; i < cfg.dim; ++i)
      for (int j = 0; j < cfg.dim; ++j)
        m[i][j] += c * (cfg.evecs[t][i] * cfg.evecs[t][j]);
  }
  return m;
}

/// G_{A,c}(x,y) = sum_alpha c_alpha (alpha,x)(alpha,y); as a matrix this is
/// the gram operator, exposed separately for readability at call sites.
inline cd g_pairing(const VectorConfig& cfg, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  cd s{0.0, 0.0};
  for (int i = 0; i < cfg.size(); ++i) s += cfg.mults[i] * inner(cfg.vecs[i], x) * inner(cfg.vecs[i], y);
  return s;
}

}  // namespace veelab
