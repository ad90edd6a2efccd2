#pragma once
// Vee-system condition checks: Euclidean trigonometric string sums, the
// quadratic pairing condition, the G-paired trigonometric variant, the
// M-operator eigendecomposition, and the rational complex two-plane test.
// Exact-mode configs cancel in exact arithmetic, so on-locus residuals are
// literal zeros rather than rounding noise.

#include <veelab/config.hpp>
#include <veelab/errors.hpp>
#include <veelab/exact_linalg.hpp>
#include <veelab/strings.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace veelab {

struct StringResidual {
  int alpha = -1;            // index of the string base vector (plane anchor for 2-plane checks)
  std::vector<int> members;  // participating vector indices
  double residual = 0.0;     // relative to the term-magnitude scale
  bool reducible = false;    // 2-plane check only
};

struct VeeReport {
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool verdict = true;
  std::vector<StringResidual> table;
};

namespace detail {

inline ExactComplex promote(const ExactScalar& s) { return ExactComplex(s, ExactScalar(0)); }

// Frobenius norm of sum_{b in S} c_b p_b (alpha ^ beta_b). Exact pairing
// values keep Weyl-symmetric cancellation exact; a true zero returns 0.0.
inline double paired_string_norm(const VectorConfig& cfg, int a, const std::vector<int>& S,
                                 const std::vector<ExactComplex>* pair_exact,
                                 const std::vector<cd>& pair_numeric) {
  const int n = cfg.dim;
  if (cfg.exact() && pair_exact) {
    const ExactVector& av = cfg.evecs[static_cast<size_t>(a)];
    std::vector<std::vector<ExactComplex>> sum(
        static_cast<size_t>(n), std::vector<ExactComplex>(static_cast<size_t>(n)));
    for (size_t t = 0; t < S.size(); ++t) {
      const ExactVector& bv = cfg.evecs[static_cast<size_t>(S[t])];
      const ExactComplex coef =
          ExactComplex::from(cfg.mults[static_cast<size_t>(S[t])]) * (*pair_exact)[t];
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const ExactScalar w = av[static_cast<size_t>(i)] * bv[static_cast<size_t>(j)] -
                                av[static_cast<size_t>(j)] * bv[static_cast<size_t>(i)];
          sum[static_cast<size_t>(i)][static_cast<size_t>(j)] =
              sum[static_cast<size_t>(i)][static_cast<size_t>(j)] + coef * promote(w);
        }
    }
    double frob2 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const ExactComplex& e = sum[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (e.re.is_zero() && e.im.is_zero()) continue;
        frob2 += 2.0 * std::norm(cd(e.re.to_double(), e.im.to_double()));
      }
    return std::sqrt(frob2);
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  for (size_t t = 0; t < S.size(); ++t) {
    const Eigen::VectorXcd& bv = cfg.vecs[static_cast<size_t>(S[t])];
    sum += cfg.mults[static_cast<size_t>(S[t])] * pair_numeric[t] *
           wedge_matrix(cfg.vecs[static_cast<size_t>(a)], bv);
  }
  return sum.norm();
}

inline double hnorm2(const Eigen::VectorXcd& v) { return v.squaredNorm(); }

}  // namespace detail

// For every alpha and every alpha-string: || sum_{beta in string} c_beta
// (alpha,beta) alpha^beta || relative to 1 + sum |c_beta| |alpha|^2 |beta|^2.
inline VeeReport euclidean_vee_residual(const VectorConfig& cfg, double tau = 1e-8) {
  VeeReport rep;
  rep.tolerance = tau;
  for (int a = 0; a < cfg.size(); ++a) {
    const auto strings = alpha_strings(cfg, a);
    for (const auto& str : strings) {
      std::vector<ExactComplex> pe;
      std::vector<cd> pn;
      double scale = 1.0;
      for (int b : str.members) {
        if (cfg.exact())
          pe.push_back(detail::promote(
              inner_exact(cfg.evecs[static_cast<size_t>(a)], cfg.evecs[static_cast<size_t>(b)])));
        pn.push_back(inner(cfg.vecs[static_cast<size_t>(a)], cfg.vecs[static_cast<size_t>(b)]));
        scale += std::abs(cfg.mults[static_cast<size_t>(b)]) *
                 detail::hnorm2(cfg.vecs[static_cast<size_t>(a)]) *
                 detail::hnorm2(cfg.vecs[static_cast<size_t>(b)]);
      }
      StringResidual row;
      row.alpha = a;
      row.members = str.members;
      row.residual =
          detail::paired_string_norm(cfg, a, str.members, cfg.exact() ? &pe : nullptr, pn) / scale;
      rep.max_residual = std::max(rep.max_residual, row.residual);
      rep.table.push_back(std::move(row));
    }
  }
  rep.verdict = rep.max_residual < tau;
  return rep;
}

// Same string sums with the pairing taken through the form G_{A,c} given by
// the gram operator M: G(alpha,beta) = alpha^T M beta.
inline VeeReport trig_vee_residual(const VectorConfig& cfg, double tau = 1e-8) {
  VeeReport rep;
  rep.tolerance = tau;
  const Eigen::MatrixXcd m = gram_operator(cfg);
  std::vector<std::vector<ExactComplex>> me;
  if (cfg.exact()) me = gram_operator_exact(cfg);

  auto pair_exact = [&](int a, int b) {
    const ExactVector& u = cfg.evecs[static_cast<size_t>(a)];
    const ExactVector& v = cfg.evecs[static_cast<size_t>(b)];
    ExactComplex out;
    for (int i = 0; i < cfg.dim; ++i)
      for (int j = 0; j < cfg.dim; ++j)
        out = out + detail::promote(u[static_cast<size_t>(i)]) *
                        me[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                        detail::promote(v[static_cast<size_t>(j)]);
    return out;
  };

  for (int a = 0; a < cfg.size(); ++a) {
    const auto strings = alpha_strings(cfg, a);
    for (const auto& str : strings) {
      std::vector<ExactComplex> pe;
      std::vector<cd> pn;
      double scale = 1.0;
      for (int b : str.members) {
        if (cfg.exact()) pe.push_back(pair_exact(a, b));
        const cd g = cfg.vecs[static_cast<size_t>(a)].transpose() * m * cfg.vecs[static_cast<size_t>(b)];
        pn.push_back(g);
        scale += std::abs(cfg.mults[static_cast<size_t>(b)]) * std::abs(g) *
                 std::sqrt(detail::hnorm2(cfg.vecs[static_cast<size_t>(a)]) *
                           detail::hnorm2(cfg.vecs[static_cast<size_t>(b)]));
      }
      StringResidual row;
      row.alpha = a;
      row.members = str.members;
      row.residual =
          detail::paired_string_norm(cfg, a, str.members, cfg.exact() ? &pe : nullptr, pn) / scale;
      rep.max_residual = std::max(rep.max_residual, row.residual);
      rep.table.push_back(std::move(row));
    }
  }
  rep.verdict = rep.max_residual < tau;
  return rep;
}

// Quadratic condition tensor T_{abij} = sum_{alpha,beta} c_a c_b (alpha,beta)
// (alpha^beta)_{ab} (alpha^beta)_{ij} flattened over the index pairs a<b and
// i<j. The full 4-index tensor is recovered by antisymmetry.
inline Eigen::MatrixXcd condition2_tensor(const VectorConfig& raw) {
  const VectorConfig cfg = positive_normalize(raw);
  const int n = cfg.dim;
  const int npairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  if (cfg.exact()) {
    std::vector<std::vector<ExactComplex>> acc(
        static_cast<size_t>(npairs), std::vector<ExactComplex>(static_cast<size_t>(npairs)));
    for (int x = 0; x < cfg.size(); ++x)
      for (int y = 0; y < cfg.size(); ++y) {
        if (x == y) continue;
        const ExactVector& u = cfg.evecs[static_cast<size_t>(x)];
        const ExactVector& v = cfg.evecs[static_cast<size_t>(y)];
        const ExactComplex coef = ExactComplex::from(cfg.mults[static_cast<size_t>(x)]) *
                                  ExactComplex::from(cfg.mults[static_cast<size_t>(y)]) *
                                  detail::promote(inner_exact(u, v));
        if (coef.re.is_zero() && coef.im.is_zero()) continue;
        std::vector<ExactScalar> w(static_cast<size_t>(npairs));
        for (int k = 0; k < npairs; ++k)
          w[static_cast<size_t>(k)] =
              u[static_cast<size_t>(pairs[static_cast<size_t>(k)].first)] *
                  v[static_cast<size_t>(pairs[static_cast<size_t>(k)].second)] -
              u[static_cast<size_t>(pairs[static_cast<size_t>(k)].second)] *
                  v[static_cast<size_t>(pairs[static_cast<size_t>(k)].first)];
        for (int p = 0; p < npairs; ++p) {
          if (w[static_cast<size_t>(p)].is_zero()) continue;
          const ExactComplex cp = coef * detail::promote(w[static_cast<size_t>(p)]);
          for (int qq = 0; qq < npairs; ++qq) {
            if (w[static_cast<size_t>(qq)].is_zero()) continue;
            acc[static_cast<size_t>(p)][static_cast<size_t>(qq)] =
                acc[static_cast<size_t>(p)][static_cast<size_t>(qq)] +
                cp * detail::promote(w[static_cast<size_t>(qq)]);
          }
        }
      }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(npairs, npairs);
    for (int p = 0; p < npairs; ++p)
      for (int qq = 0; qq < npairs; ++qq) {
        const ExactComplex& e = acc[static_cast<size_t>(p)][static_cast<size_t>(qq)];
        if (!(e.re.is_zero() && e.im.is_zero()))
          out(p, qq) = cd(e.re.to_double(), e.im.to_double());
      }
    return out;
  }

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(npairs, npairs);
  for (int x = 0; x < cfg.size(); ++x)
    for (int y = 0; y < cfg.size(); ++y) {
      if (x == y) continue;
      const Eigen::VectorXcd& u = cfg.vecs[static_cast<size_t>(x)];
      const Eigen::VectorXcd& v = cfg.vecs[static_cast<size_t>(y)];
      const cd coef = cfg.mults[static_cast<size_t>(x)] * cfg.mults[static_cast<size_t>(y)] * inner(u, v);
      if (coef == cd(0)) continue;
      Eigen::VectorXcd w(npairs);
      for (int k = 0; k < npairs; ++k)
        w[k] = u[pairs[static_cast<size_t>(k)].first] * v[pairs[static_cast<size_t>(k)].second] -
               u[pairs[static_cast<size_t>(k)].second] * v[pairs[static_cast<size_t>(k)].first];
      out += coef * w * w.transpose();
    }
  return out;
}

inline double condition2_residual(const VectorConfig& cfg) {
  if (cfg.size() == 0) return 0.0;
  const Eigen::MatrixXcd t = condition2_tensor(cfg);
  return t.size() == 0 ? 0.0 : t.cwiseAbs().maxCoeff();
}

struct Component {
  cd eigenvalue;
  std::vector<int> members;
  Eigen::MatrixXcd basis;  // Hermitian-orthonormal columns spanning V_i
  double well_distributed_defect = 0.0;
};

struct Decomposition {
  std::vector<Component> components;
  std::vector<double> eigen_residuals;  // per config vector, relative to ||M||
  bool all_eigen = true;
};

// Decomposes V along the eigenvalues of M = sum c_a a a^T; every vector of a
// Euclidean trigonometric vee-system is an exact M-eigenvector, so exact
// configs are tested with exact arithmetic. strict -> throw on a failed
// eigenvector test, else record the defect and continue.
inline Decomposition m_decomposition(const VectorConfig& cfg, double tau_cluster = tol::cluster,
                                     bool strict = true) {
  const int n = cfg.dim;
  if (cfg.size() < 1) fail(errc::span_deficient, "empty configuration spans nothing");

  // Span test: exact rank when available, singular values otherwise.
  if (cfg.exact()) {
    ExactMatrix rows;
    for (const auto& v : cfg.evecs) rows.push_back(v);
    if (static_cast<int>(exact_rref(rows).size()) < n)
      fail(errc::span_deficient, "configuration vectors do not span the ambient space");
  } else {
    Eigen::MatrixXcd a(cfg.size(), n);
    for (int k = 0; k < cfg.size(); ++k) a.row(k) = cfg.vecs[static_cast<size_t>(k)].transpose();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() < n || sv[n - 1] <= tol::rank_rel * sv[0])
      fail(errc::span_deficient, "configuration vectors do not span the ambient space");
  }

  const Eigen::MatrixXcd m = gram_operator(cfg);
  const double mscale = std::max(m.norm(), 1e-300);
  std::vector<std::vector<ExactComplex>> me;
  if (cfg.exact()) me = gram_operator_exact(cfg);

  Decomposition dec;
  std::vector<cd> lambdas(static_cast<size_t>(cfg.size()));
  dec.eigen_residuals.assign(static_cast<size_t>(cfg.size()), 0.0);

  for (int k = 0; k < cfg.size(); ++k) {
    bool exact_ok = false;
    if (cfg.exact()) {
      const ExactVector& av = cfg.evecs[static_cast<size_t>(k)];
      std::vector<ExactComplex> ma(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          ma[static_cast<size_t>(i)] =
              ma[static_cast<size_t>(i)] +
              me[static_cast<size_t>(i)][static_cast<size_t>(j)] * detail::promote(av[static_cast<size_t>(j)]);
      int pivot = -1;
      for (int i = 0; i < n; ++i)
        if (!av[static_cast<size_t>(i)].is_zero()) {
          pivot = i;
          break;
        }
      const ExactComplex lam = ma[static_cast<size_t>(pivot)] / detail::promote(av[static_cast<size_t>(pivot)]);
      exact_ok = true;
      for (int i = 0; i < n && exact_ok; ++i) {
        const ExactComplex diff = ma[static_cast<size_t>(i)] - lam * detail::promote(av[static_cast<size_t>(i)]);
        exact_ok = diff.re.is_zero() && diff.im.is_zero();
      }
      if (exact_ok) {
        lambdas[static_cast<size_t>(k)] = cd(lam.re.to_double(), lam.im.to_double());
        dec.eigen_residuals[static_cast<size_t>(k)] = 0.0;
        continue;
      }
    }
    const Eigen::VectorXcd& av = cfg.vecs[static_cast<size_t>(k)];
    const Eigen::VectorXcd mav = m * av;
    const cd lam = av.dot(mav) / av.dot(av);  // Hermitian least squares
    const double resid = (mav - lam * av).norm() / (mscale * av.norm());
    lambdas[static_cast<size_t>(k)] = lam;
    dec.eigen_residuals[static_cast<size_t>(k)] = resid;
    if (resid > tau_cluster && !exact_ok) {
      dec.all_eigen = false;
      if (strict)
        fail(errc::not_eigenvector,
             "vector " + std::to_string(k) + " is not an eigenvector of the gram operator "
             "(relative defect " + std::to_string(resid) + ")");
    }
  }

  // Cluster eigenvalues within tau_cluster * ||M||; merging is conservative.
  std::vector<int> comp_of(static_cast<size_t>(cfg.size()), -1);
  std::vector<std::vector<int>> groups;
  for (int k = 0; k < cfg.size(); ++k) {
    int found = -1;
    for (size_t g = 0; g < groups.size(); ++g)
      for (int other : groups[g])
        if (std::abs(lambdas[static_cast<size_t>(k)] - lambdas[static_cast<size_t>(other)]) <=
            tau_cluster * mscale) {
          found = static_cast<int>(g);
          break;
        }
    if (found < 0) {
      groups.push_back({k});
      comp_of[static_cast<size_t>(k)] = static_cast<int>(groups.size()) - 1;
    } else {
      groups[static_cast<size_t>(found)].push_back(k);
      comp_of[static_cast<size_t>(k)] = found;
    }
  }

  for (const auto& g : groups) {
    Component comp;
    comp.members = g;
    cd lsum = 0;
    for (int k : g) lsum += lambdas[static_cast<size_t>(k)];
    comp.eigenvalue = lsum / static_cast<double>(g.size());

    Eigen::MatrixXcd cols(n, static_cast<int>(g.size()));
    for (size_t t = 0; t < g.size(); ++t) cols.col(static_cast<int>(t)) = cfg.vecs[static_cast<size_t>(g[t])];
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(cols);
    qr.setThreshold(tol::rank_rel);
    const int rank = static_cast<int>(qr.rank());
    Eigen::MatrixXcd qfull =
        qr.householderQ() * Eigen::MatrixXcd::Identity(n, std::min<int>(n, static_cast<int>(g.size())));
    comp.basis = qfull.leftCols(rank);

    // Well-distributedness: G restricted to V_i proportional to the ambient
    // bilinear form restricted to V_i (least-squares proportionality defect).
    Eigen::MatrixXcd gres(rank, rank), bres(rank, rank);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) {
        cd gsum = 0;
        for (int k : g)
          gsum += cfg.mults[static_cast<size_t>(k)] * inner(cfg.vecs[static_cast<size_t>(k)], comp.basis.col(i)) *
                  inner(cfg.vecs[static_cast<size_t>(k)], comp.basis.col(j));
        gres(i, j) = gsum;
        bres(i, j) = inner(comp.basis.col(i), comp.basis.col(j));
      }
    const cd lam_ls = (bres.conjugate().cwiseProduct(gres)).sum() /
                      std::max(bres.squaredNorm(), 1e-300);
    comp.well_distributed_defect = (gres - lam_ls * bres).norm() / (1.0 + gres.norm());
    dec.components.push_back(std::move(comp));
  }
  return dec;
}

// Two-plane test for the rational complex form: every plane spanned by a pair
// of configuration vectors must cut out a reducible subsystem or one on which
// G^r = sum c_a (a,.)(a,.) is proportional to the ambient form.
inline VeeReport rational_complex_vee_check(const VectorConfig& cfg, double tau = 1e-8) {
  VeeReport rep;
  rep.tolerance = tau;
  const auto classes = collinear_classes(cfg);
  std::vector<int> reps;
  for (const auto& cl : classes) reps.push_back(cl.rep);

  std::map<std::string, std::pair<int, int>> planes;
  auto plane_key_exact = [&](int i, int j) {
    ExactMatrix rows = {cfg.evecs[static_cast<size_t>(i)], cfg.evecs[static_cast<size_t>(j)]};
    exact_rref(rows);
    std::string key;
    for (const auto& row : rows)
      for (const auto& e : row) key += format_exact(e) + ";";
    return key;
  };
  auto plane_key_numeric = [&](int i, int j) {
    // Projector onto the plane, quantized entrywise.
    Eigen::MatrixXcd cols(cfg.dim, 2);
    cols.col(0) = cfg.vecs[static_cast<size_t>(i)].normalized();
    cols.col(1) = cfg.vecs[static_cast<size_t>(j)];
    cols.col(1) -= cols.col(0) * cols.col(0).dot(cols.col(1));
    cols.col(1).normalize();
    Eigen::MatrixXcd proj = cols * cols.adjoint();
    std::string key;
    for (int a = 0; a < proj.rows(); ++a)
      for (int b = 0; b < proj.cols(); ++b) {
        key += std::to_string(std::llround(proj(a, b).real() / tol::plane_key)) + "," +
               std::to_string(std::llround(proj(a, b).imag() / tol::plane_key)) + ";";
      }
    return key;
  };

  for (size_t x = 0; x < reps.size(); ++x)
    for (size_t y = x + 1; y < reps.size(); ++y) {
      const std::string key =
          cfg.exact() ? plane_key_exact(reps[x], reps[y]) : plane_key_numeric(reps[x], reps[y]);
      planes.emplace(key, std::make_pair(reps[x], reps[y]));
    }

  for (const auto& [key, span] : planes) {
    (void)key;
    const int i = span.first, j = span.second;

    // Collect B = A intersect plane.
    std::vector<int> b;
    if (cfg.exact()) {
      ExactMatrix rows = {cfg.evecs[static_cast<size_t>(i)], cfg.evecs[static_cast<size_t>(j)]};
      const auto pivots = exact_rref(rows);
      for (int k = 0; k < cfg.size(); ++k)
        if (exact_in_span(rows, pivots, cfg.evecs[static_cast<size_t>(k)])) b.push_back(k);
    } else {
      Eigen::MatrixXcd cols(cfg.dim, 2);
      cols.col(0) = cfg.vecs[static_cast<size_t>(i)].normalized();
      cols.col(1) = cfg.vecs[static_cast<size_t>(j)];
      cols.col(1) -= cols.col(0) * cols.col(0).dot(cols.col(1));
      cols.col(1).normalize();
      for (int k = 0; k < cfg.size(); ++k) {
        const Eigen::VectorXcd& v = cfg.vecs[static_cast<size_t>(k)];
        if ((v - cols * (cols.adjoint() * v)).norm() <= tol::plane_key * v.norm()) b.push_back(k);
      }
    }

    StringResidual row;
    row.alpha = i;
    row.members = b;

    // Reducibility: orthogonality graph on B disconnected => the subsystem
    // splits and the plane imposes no condition.
    std::vector<int> color(b.size(), -1);
    auto orth = [&](int u, int v) {
      if (cfg.exact())
        return inner_exact(cfg.evecs[static_cast<size_t>(u)], cfg.evecs[static_cast<size_t>(v)]).is_zero();
      return std::abs(inner(cfg.vecs[static_cast<size_t>(u)], cfg.vecs[static_cast<size_t>(v)])) <=
             1e-12 * cfg.vecs[static_cast<size_t>(u)].norm() * cfg.vecs[static_cast<size_t>(v)].norm();
    };
    std::vector<size_t> stack = {0};
    color[0] = 0;
    while (!stack.empty()) {
      const size_t u = stack.back();
      stack.pop_back();
      for (size_t v = 0; v < b.size(); ++v)
        if (color[v] < 0 && !orth(b[u], b[v])) {
          color[v] = 0;
          stack.push_back(v);
        }
    }
    row.reducible = std::any_of(color.begin(), color.end(), [](int c) { return c < 0; });

    if (!row.reducible) {
      // Proportionality of G^r|_plane to the ambient form in the (i, j) basis.
      Eigen::MatrixXcd gform(2, 2), bform(2, 2);
      const Eigen::VectorXcd basis[2] = {cfg.vecs[static_cast<size_t>(i)], cfg.vecs[static_cast<size_t>(j)]};
      for (int p = 0; p < 2; ++p)
        for (int qq = 0; qq < 2; ++qq) {
          cd sum = 0;
          for (int k : b)
            sum += cfg.mults[static_cast<size_t>(k)] * inner(cfg.vecs[static_cast<size_t>(k)], basis[p]) *
                   inner(cfg.vecs[static_cast<size_t>(k)], basis[qq]);
          gform(p, qq) = sum;
          bform(p, qq) = inner(basis[p], basis[qq]);
        }
      const cd lam = (bform.conjugate().cwiseProduct(gform)).sum() /
                     std::max(bform.squaredNorm(), 1e-300);
      row.residual = (gform - lam * bform).norm() / (1.0 + gform.norm());
      rep.max_residual = std::max(rep.max_residual, row.residual);
    }
    rep.table.push_back(std::move(row));
  }
  rep.verdict = rep.max_residual < tau;
  return rep;
}

struct CHypothesisFlag {
  int rep = -1;              // collinearity class representative
  std::vector<int> subset;   // members whose C value vanishes
  cd value;
};

// The string identities assume C_delta = sum_{gamma in delta} c_gamma
// k_gamma^2 != 0 for sub-collections delta of each collinearity class, where
// gamma = k_gamma * rep. Near-zero values are reported as warnings; classes
// larger than log2(cap) members only test singletons and the full class.
inline std::vector<CHypothesisFlag> c_hypothesis(const VectorConfig& cfg, double tau = 1e-12,
                                                 size_t cap = 20) {
  std::vector<CHypothesisFlag> flags;
  for (const auto& cl : collinear_classes(cfg)) {
    const size_t k = cl.members.size();
    std::vector<std::vector<size_t>> subsets;
    if (k <= 20 && (static_cast<size_t>(1) << k) <= cap * 2) {
      for (size_t mask = 1; mask < (static_cast<size_t>(1) << k); ++mask) {
        std::vector<size_t> sub;
        for (size_t t = 0; t < k; ++t)
          if (mask & (static_cast<size_t>(1) << t)) sub.push_back(t);
        subsets.push_back(std::move(sub));
      }
    } else {
      for (size_t t = 0; t < k; ++t) subsets.push_back({t});
      std::vector<size_t> all(k);
      for (size_t t = 0; t < k; ++t) all[t] = t;
      subsets.push_back(std::move(all));
    }
    for (const auto& sub : subsets) {
      cd value = 0;
      double mag = 0.0;
      for (size_t t : sub) {
        const int idx = cl.members[t];
        const cd term = cfg.mults[static_cast<size_t>(idx)] * cl.ratios[t] * cl.ratios[t];
        value += term;
        mag += std::abs(term);
      }
      if (std::abs(value) <= tau * (1.0 + mag)) {
        CHypothesisFlag f;
        f.rep = cl.rep;
        for (size_t t : sub) f.subset.push_back(cl.members[t]);
        f.value = value;
        flags.push_back(std::move(f));
      }
    }
  }
  return flags;
}

}  // namespace veelab
