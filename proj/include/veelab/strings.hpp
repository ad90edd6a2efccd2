#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "veelab/config.hpp"

namespace veelab {

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(int n) : id_(n), sz_(n, 1) { std::iota(id_.begin(), id_.end(), 0); }
  int find(int i) {
    while (i != id_[i]) {
      id_[i] = id_[id_[i]];
      i = id_[i];
    }
    return i;
  }
  void merge(int i, int j) {
    i = find(i);
    j = find(j);
    if (i == j) return;
    if (sz_[i] < sz_[j]) std::swap(i, j);
    id_[j] = i;
    sz_[i] += sz_[j];
  }

 private:
  std::vector<int> id_, sz_;
};

inline bool exact_integer_multiple(const ExactVector& w, const ExactVector& alpha) {
  if (exact_is_zero(w)) return true;  // m = 0
  size_t j = 0;
  while (j < alpha.size() && alpha[j].is_zero()) ++j;
  ExactScalar m = w[j] / alpha[j];
  if (!m.is_integer()) return false;
  for (size_t i = 0; i < alpha.size(); ++i)
    if (w[i] != m * alpha[i]) return false;
  return true;
}

inline bool numeric_integer_multiple(const Eigen::VectorXcd& w, const Eigen::VectorXcd& alpha) {
  const double scale = 1.0 + w.norm() + alpha.norm();
  if (w.norm() <= tol::string_int * scale) return true;
  long j = 0;
  alpha.cwiseAbs().maxCoeff(&j);
  const cd m = w[j] / alpha[j];
  const double m_int = std::round(m.real());
  return (w - cd(m_int, 0.0) * alpha).norm() <= tol::string_int * scale * (1.0 + std::abs(m_int));
}

}  // namespace detail

/// beta ~ gamma iff beta + gamma or beta - gamma is an integer multiple of alpha.
inline bool string_related(const VectorConfig& cfg, int alpha, int beta, int gamma) {
  if (cfg.exact()) {
    ExactVector diff(cfg.dim), sum(cfg.dim);
    for (int i = 0; i < cfg.dim; ++i) {
      diff[static_cast<size_t>(i)] = cfg.evecs[beta][i] - cfg.evecs[gamma][i];
      sum[static_cast<size_t>(i)] = cfg.evecs[beta][i] + cfg.evecs[gamma][i];
    }
    return detail::exact_integer_multiple(diff, cfg.evecs[alpha]) ||
           detail::exact_integer_multiple(sum, cfg.evecs[alpha]);
  }
  return detail::numeric_integer_multiple(cfg.vecs[beta] - cfg.vecs[gamma], cfg.vecs[alpha]) ||
         detail::numeric_integer_multiple(cfg.vecs[beta] + cfg.vecs[gamma], cfg.vecs[alpha]);
}

struct AlphaString {
  std::vector<int> members;  // ascending input indices
};

/// Partition of A minus the collinear class of alpha into alpha-strings,
/// computed as connected components of the pairwise string relation.
/// Strings are ordered by smallest member; vectors with no partner form
/// singleton strings.
inline std::vector<AlphaString> alpha_strings(const VectorConfig& cfg, int alpha_idx) {
  std::vector<int> rest;
  for (int i = 0; i < cfg.size(); ++i)
    if (!collinear_ratio(cfg, i, alpha_idx).has_value()) rest.push_back(i);

  detail::UnionFind uf(static_cast<int>(rest.size()));
  for (size_t s = 0; s < rest.size(); ++s)
    for (size_t t = s + 1; t < rest.size(); ++t)
      if (string_related(cfg, alpha_idx, rest[s], rest[t])) uf.merge(static_cast<int>(s), static_cast<int>(t));

  std::vector<AlphaString> out;
  std::vector<int> root_slot(rest.size(), -1);
  for (size_t s = 0; s < rest.size(); ++s) {
    int r = uf.find(static_cast<int>(s));
    if (root_slot[static_cast<size_t>(r)] < 0) {
      root_slot[static_cast<size_t>(r)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<size_t>(root_slot[static_cast<size_t>(r)])].members.push_back(rest[s]);
  }
  // rest is ascending, so members are ascending and strings are already
  // ordered by smallest member.
  return out;
}

}  // namespace veelab
