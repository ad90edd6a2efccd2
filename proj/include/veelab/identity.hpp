#pragma once
// Identity vector fields for the multiplication F_i * F_j on tangent spaces:
// the determinant-minor construction B_ij = sum_k A^k F_kij with
// A^k = (-1)^{k+1} det P_k, the closed-form case table e = c0 H^{-1} sum
// cbar_a sin(2(a,x)) d_a, explicit component formulas for the F4 family,
// and the change of basis that produces e with e^k F_klm = g_lm for an
// arbitrary constant invertible metric g.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "veelab/catalog.hpp"
#include "veelab/config.hpp"
#include "veelab/errors.hpp"
#include "veelab/prepotential.hpp"

namespace veelab {

struct IdentityField {
  int i0 = 0;
  Eigen::VectorXcd coeffs;          // A^k, signed maximal minors of P
  cd h = 0.0;                       // averaged over diagonal choices of F_kii
  double h_spread = 0.0;            // max pairwise disagreement between choices
  Eigen::VectorXcd e;               // h^{-1} A
  Eigen::VectorXd singular_values;  // of P; empty in dimension one
  int rank = 0;                     // singular values above 1e-10 * sigma_max
};

inline double tensor_norm(const DerivativeTensor& t) {
  double s = 0.0;
  for (const auto& f : t.f) s += f.squaredNorm();
  return std::sqrt(s);
}

inline Eigen::MatrixXcd b_matrix(const DerivativeTensor& t, const Eigen::VectorXcd& a) {
  if (static_cast<int>(a.size()) != t.dim)
    fail(errc::dimension_mismatch, "coefficient count does not match tensor dimension");
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(t.dim, t.dim);
  for (int k = 0; k < t.dim; ++k) b += a(k) * t.f[k];
  return b;
}

// Signed maximal minors of P = (F_{i0 i j}), rows i != i0.  Dimension one is
// handled by the empty-minor convention A^1 = 1, h = F_111, so every catalog
// configuration passes through the same interface.
inline IdentityField minor_identity_field(const DerivativeTensor& t, int i0 = 0) {
  const int n = t.dim;
  if (i0 < 0 || i0 >= n) fail(errc::invalid_argument, "pivot index out of range");
  IdentityField out;
  out.i0 = i0;
  if (n == 1) {
    out.coeffs = Eigen::VectorXcd::Ones(1);
    out.h = t.f[0](0, 0);
    out.rank = 0;
    if (std::abs(out.h) <= 1e-12 * tensor_norm(t))
      fail(errc::zero_h, "identity combination degenerates to the zero matrix");
    out.e = Eigen::VectorXcd::Constant(1, cd(1.0, 0.0) / out.h);
    return out;
  }

  Eigen::MatrixXcd p(n - 1, n);
  {
    int row = 0;
    for (int i = 0; i < n; ++i) {
      if (i == i0) continue;
      p.row(row++) = t.f[i0].row(i);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p);
  out.singular_values = svd.singularValues();
  const double smax = out.singular_values(0);
  for (int k = 0; k < out.singular_values.size(); ++k)
    if (out.singular_values(k) > tol::rank_rel * smax) ++out.rank;
  if (out.rank < n - 1)
    fail(errc::rank_deficient, "pivot slice has rank " + std::to_string(out.rank) +
                                   " < " + std::to_string(n - 1) +
                                   "; minors give no unique combination");

  out.coeffs.resize(n);
  Eigen::MatrixXcd minor(n - 1, n - 1);
  for (int k = 0; k < n; ++k) {
    int col = 0;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      minor.col(col++) = p.col(j);
    }
    const cd det = minor.partialPivLu().determinant();
    out.coeffs(k) = (k % 2 == 0) ? det : -det;
  }

  cd hsum = 0.0;
  std::vector<cd> hs(n);
  for (int i = 0; i < n; ++i) {
    cd hi = 0.0;
    for (int k = 0; k < n; ++k) hi += out.coeffs(k) * t.f[k](i, i);
    hs[i] = hi;
    hsum += hi;
  }
  out.h = hsum / static_cast<double>(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.h_spread = std::max(out.h_spread, std::abs(hs[i] - hs[j]));
  if (std::abs(out.h) <= 1e-12 * out.coeffs.norm() * tensor_norm(t))
    fail(errc::zero_h, "identity combination degenerates to the zero matrix");
  out.e = out.coeffs / out.h;
  return out;
}

// Max-entry defect of e^k F_klm = g_lm.
inline double identity_residual(const DerivativeTensor& t, const Eigen::VectorXcd& e,
                                const Eigen::MatrixXcd& g) {
  return (b_matrix(t, e) - g).cwiseAbs().maxCoeff();
}

inline double identity_residual(const DerivativeTensor& t, const Eigen::VectorXcd& e) {
  return identity_residual(t, e, Eigen::MatrixXcd::Identity(t.dim, t.dim));
}

// det of P with the row (F_{1rt}, ..., F_{Nrt}) inserted at position i0,
// normalized by the product of row norms.  Vanishes wherever the slices
// commute, for every r < t with r, t != i0.
inline double q_determinant_defect(const DerivativeTensor& t, int i0, int r, int s) {
  const int n = t.dim;
  if (i0 < 0 || i0 >= n || r < 0 || r >= n || s < 0 || s >= n)
    fail(errc::invalid_argument, "index out of range");
  if (r == s || r == i0 || s == i0)
    fail(errc::invalid_argument, "rows r, t must be distinct from each other and the pivot");
  Eigen::MatrixXcd q(n, n);
  {
    int row = 0;
    for (int i = 0; i < n; ++i) {
      if (i == i0) continue;
      q.row(row >= i0 ? row + 1 : row) = t.f[i0].row(i);
      ++row;
    }
    for (int k = 0; k < n; ++k) q(i0, k) = t.f[k](r, s);
  }
  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale *= q.row(i).norm();
  if (scale == 0.0) return 0.0;
  return std::abs(q.partialPivLu().determinant()) / scale;
}

struct ClosedFormSample {
  Eigen::VectorXcd e;
  cd H = 0.0;
};

inline cd closed_form_h(const ClosedFormCase& cf, const Eigen::VectorXcd& x) {
  cd h = cf.H0;
  for (int a = 0; a < cf.cfg.size(); ++a) {
    const cd s = std::sin(inner(cf.cfg.vecs[a], x));
    h += cf.cbar[a] * s * s;
  }
  return h;
}

inline ClosedFormSample closed_form_identity(const ClosedFormCase& cf,
                                             const Eigen::VectorXcd& x) {
  if (static_cast<int>(x.size()) != cf.cfg.dim)
    fail(errc::dimension_mismatch, "point dimension does not match configuration");
  double scale = std::abs(cf.H0);
  for (const cd& c : cf.cbar) scale += std::abs(c);
  const cd h = closed_form_h(cf, x);
  if (std::abs(h) <= 1e-10 * (1.0 + scale))
    fail(errc::h_vanishes, "normalizing function H vanishes at the sample point");
  ClosedFormSample out;
  out.H = h;
  out.e = Eigen::VectorXcd::Zero(cf.cfg.dim);
  for (int a = 0; a < cf.cfg.size(); ++a)
    out.e += cf.cbar[a] * std::sin(2.0 * inner(cf.cfg.vecs[a], x)) * cf.cfg.vecs[a];
  out.e *= cf.c0 / h;
  return out;
}

// Residual of the bilinear identity behind the case table:
//   sum_{a,b} cbar_a c_b (a,b)(b,u)(b,v) sin(2(a,x)) cot((b,x)) = c0^{-1} H (u,v),
// normalized by the total term magnitude.
inline double master_identity_residual(const ClosedFormCase& cf, const Eigen::VectorXcd& x,
                                       const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  const int m = cf.cfg.size();
  if (static_cast<int>(x.size()) != cf.cfg.dim || static_cast<int>(u.size()) != cf.cfg.dim ||
      static_cast<int>(v.size()) != cf.cfg.dim)
    fail(errc::dimension_mismatch, "point dimension does not match configuration");
  std::vector<cd> sin2a(m), cotb(m), bu(m), bv(m);
  for (int a = 0; a < m; ++a) {
    const cd ax = inner(cf.cfg.vecs[a], x);
    if (cf.cfg.mults[a] != cd(0.0, 0.0) && std::abs(std::sin(ax)) < tol::pole_eval)
      fail(errc::pole_hit, "sample point lies on a kernel pole");
    sin2a[a] = std::sin(2.0 * ax);
    cotb[a] = std::cos(ax) / std::sin(ax);
    bu[a] = inner(cf.cfg.vecs[a], u);
    bv[a] = inner(cf.cfg.vecs[a], v);
  }
  cd lhs = 0.0;
  double mag = 0.0;
  for (int a = 0; a < m; ++a) {
    if (cf.cbar[a] == cd(0.0, 0.0)) continue;
    for (int b = 0; b < m; ++b) {
      const cd term = cf.cbar[a] * cf.cfg.mults[b] * inner(cf.cfg.vecs[a], cf.cfg.vecs[b]) *
                      bu[b] * bv[b] * sin2a[a] * cotb[b];
      lhs += term;
      mag += std::abs(term);
    }
  }
  const cd rhs = closed_form_h(cf, x) * inner(u, v) / cf.c0;
  return std::abs(lhs - rhs) / (1.0 + mag + std::abs(rhs));
}

enum class F4ExplicitVariant { r_minus_2q, r_minus_4q };

struct F4Explicit {
  Eigen::VectorXcd b;  // components; e^k = h^{-1} B^k
  cd h = 0.0;
};

inline F4Explicit f4_explicit_components(const Eigen::VectorXcd& x, F4ExplicitVariant variant,
                                         double q = 1.0) {
  if (x.size() != 4) fail(errc::dimension_mismatch, "explicit components need four coordinates");
  if (q == 0.0) fail(errc::bad_case_parameters, "q must be nonzero");
  F4Explicit out;
  out.b.resize(4);
  std::array<cd, 4> cosx, sinx, cos2x;
  for (int i = 0; i < 4; ++i) {
    cosx[i] = std::cos(x(i));
    sinx[i] = std::sin(x(i));
    cos2x[i] = std::cos(2.0 * x(i));
  }
  for (int k = 0; k < 4; ++k) {
    cd sum2 = 0.0;
    cd prod = 1.0;
    for (int i = 0; i < 4; ++i) {
      if (i == k) continue;
      sum2 += cos2x[i];
      prod *= cosx[i];
    }
    if (variant == F4ExplicitVariant::r_minus_2q)
      out.b(k) = sinx[k] * (cosx[k] * (-1.0 + sum2) - 2.0 * prod);
    else
      out.b(k) = sinx[k] * (cosx[k] + 2.0 * prod);
  }
  if (variant == F4ExplicitVariant::r_minus_2q) {
    const VectorConfig cfg = build_f4(-2.0 * q, q);
    cd h = 6.0 * q;
    for (int a = 0; a < cfg.size(); ++a)
      h += 0.5 * cfg.mults[a] * std::cos(2.0 * inner(cfg.vecs[a], x));
    out.h = h;
  } else {
    cd sum = 0.0;
    cd prod = 1.0;
    for (int i = 0; i < 4; ++i) {
      sum += cos2x[i];
      prod *= cosx[i];
    }
    out.h = -q * (6.0 + sum + 8.0 * prod);
  }
  if (std::abs(out.h) <= 1e-10 * (1.0 + 24.0 * std::abs(q)))
    fail(errc::h_vanishes, "normalizing function h vanishes at the sample point");
  return out;
}

struct MetricFactorization {
  Eigen::MatrixXcd chat;  // Chat * g * Chat^T = I
  double defect = 0.0;    // Frobenius norm of the relation residual
};

namespace detail {

// Bilinear pairing without conjugation, u^T v.
inline cd bilinear(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  return u.transpose() * v;
}

}  // namespace detail

// Factor a symmetric invertible g as Chat g Chat^T = I via its spectral
// decomposition: eigenvectors of a complex symmetric matrix for distinct
// eigenvalues are orthogonal for the bilinear form, and within eigenspaces a
// bilinear Gram-Schmidt applies.  The factorization is unique only up to
// Chat -> Q Chat with Q Q^T = I; callers must rely on the defining relation.
inline MetricFactorization metric_normalizer(const Eigen::MatrixXcd& g) {
  const int n = static_cast<int>(g.rows());
  if (g.cols() != n || n == 0) fail(errc::invalid_argument, "metric must be square");
  const double gscale = g.norm();
  if ((g - g.transpose()).norm() > 1e-12 * (1.0 + gscale))
    fail(errc::invalid_argument, "metric must be symmetric");
  {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv(n - 1) < 1e-12 * sv(0)) fail(errc::singular_metric, "metric is not invertible");
  }

  MetricFactorization out;
  bool diagonal = true;
  for (int i = 0; i < n && diagonal; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g(i, j) != cd(0.0, 0.0)) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    out.chat = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) out.chat(i, i) = cd(1.0, 0.0) / std::sqrt(g(i, i));
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g);
    if (es.info() != Eigen::Success)
      fail(errc::factorization_failure, "eigendecomposition of the metric failed");
    const Eigen::VectorXcd vals = es.eigenvalues();
    Eigen::MatrixXcd vecs = es.eigenvectors();
    double lscale = 0.0;
    for (int i = 0; i < n; ++i) lscale = std::max(lscale, std::abs(vals(i)));

    // Cluster equal eigenvalues, then orthonormalize each eigenspace for the
    // bilinear form.  Isotropic eigenspaces have no such basis.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<bool> used(n, false);
    std::vector<Eigen::VectorXcd> basis;
    std::vector<cd> lambdas;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      std::vector<int> cluster{i};
      used[i] = true;
      for (int j = i + 1; j < n; ++j)
        if (!used[j] && std::abs(vals(j) - vals(i)) <= 1e-8 * (1.0 + lscale)) {
          cluster.push_back(j);
          used[j] = true;
        }
      std::vector<Eigen::VectorXcd> work;
      for (int idx : cluster) work.push_back(vecs.col(idx));
      while (!work.empty()) {
        // Pick the least isotropic remaining vector; if all self-pairings
        // vanish, a pairwise sum restores a usable pivot when the form is
        // non-degenerate on the eigenspace.
        size_t best = 0;
        double bestmag = -1.0;
        for (size_t w = 0; w < work.size(); ++w) {
          const double m = std::abs(detail::bilinear(work[w], work[w]));
          if (m > bestmag) {
            bestmag = m;
            best = w;
          }
        }
        if (bestmag <= 1e-10 * work[best].squaredNorm() && work.size() > 1) {
          size_t bi = 0, bj = 1;
          double cross = -1.0;
          for (size_t wi = 0; wi < work.size(); ++wi)
            for (size_t wj = wi + 1; wj < work.size(); ++wj) {
              const double m = std::abs(detail::bilinear(work[wi], work[wj]));
              if (m > cross) {
                cross = m;
                bi = wi;
                bj = wj;
              }
            }
          if (cross > 1e-10 * work[bi].norm() * work[bj].norm()) {
            work[bi] += work[bj];
            best = bi;
            bestmag = std::abs(detail::bilinear(work[best], work[best]));
          }
        }
        if (bestmag <= 1e-10 * work[best].squaredNorm())
          fail(errc::factorization_failure, "isotropic eigenspace admits no orthonormal basis");
        Eigen::VectorXcd v = work[best] / std::sqrt(detail::bilinear(work[best], work[best]));
        work.erase(work.begin() + static_cast<long>(best));
        for (auto& w : work) w -= detail::bilinear(v, w) * v;
        basis.push_back(v);
        lambdas.push_back(detail::bilinear(v, g * v));
      }
    }
    out.chat.resize(n, n);
    for (int r = 0; r < n; ++r)
      out.chat.row(r) = basis[r].transpose() / std::sqrt(lambdas[r]);
  }
  out.defect = (out.chat * g * out.chat.transpose() - Eigen::MatrixXcd::Identity(n, n)).norm();
  if (out.defect > 1e-10 * (1.0 + gscale))
    fail(errc::factorization_failure, "factorization residual exceeds tolerance");
  return out;
}

// Transform the tensor to coordinates y with x = C y:
// Ftilde_{abc}(y) = C_{pa} C_{jb} C_{kc} F_{pjk}(x).
inline DerivativeTensor change_coordinates(const DerivativeTensor& t, const Eigen::MatrixXcd& c) {
  if (c.rows() != t.dim || c.cols() != t.dim)
    fail(errc::dimension_mismatch, "coordinate matrix does not match tensor dimension");
  DerivativeTensor out;
  out.dim = t.dim;
  out.x = c.partialPivLu().solve(t.x);
  out.f.assign(static_cast<size_t>(t.dim), Eigen::MatrixXcd::Zero(t.dim, t.dim));
  for (int a = 0; a < t.dim; ++a) {
    Eigen::MatrixXcd slice = Eigen::MatrixXcd::Zero(t.dim, t.dim);
    for (int p = 0; p < t.dim; ++p) slice += c(p, a) * t.f[p];
    out.f[static_cast<size_t>(a)] = c.transpose() * slice * c;
  }
  return out;
}

struct MetricIdentity {
  Eigen::MatrixXcd chat;      // normalizer applied to the metric
  IdentityField transformed;  // minors data in the normalized coordinates
  Eigen::VectorXcd e;         // field components in the original coordinates
  double residual = 0.0;      // max entry of e^k F_klm - g_lm
};

// Identity field for an arbitrary constant symmetric invertible metric
// (g_upper = (g^{ab})): normalize the metric, pass to coordinates where the
// slices commute against the standard pairing, run the minors route, and pull
// the field back.  A caller-supplied normalizer is accepted whenever it
// satisfies the defining relation, covering the Q-orbit of factorizations.
inline MetricIdentity identity_for_metric(const DerivativeTensor& t,
                                          const Eigen::MatrixXcd& g_upper, int i0 = 0,
                                          const Eigen::MatrixXcd* chat_override = nullptr) {
  MetricIdentity out;
  if (chat_override != nullptr) {
    const int n = static_cast<int>(g_upper.rows());
    if (chat_override->rows() != n || chat_override->cols() != n)
      fail(errc::dimension_mismatch, "normalizer dimension does not match metric");
    const double defect =
        (*chat_override * g_upper * chat_override->transpose() - Eigen::MatrixXcd::Identity(n, n))
            .norm();
    if (defect > 1e-8 * (1.0 + g_upper.norm()))
      fail(errc::invalid_argument, "supplied normalizer does not normalize the metric");
    out.chat = *chat_override;
  } else {
    out.chat = metric_normalizer(g_upper).chat;
  }
  const Eigen::MatrixXcd c =
      out.chat.partialPivLu().solve(Eigen::MatrixXcd::Identity(t.dim, t.dim));
  const DerivativeTensor tt = change_coordinates(t, c);
  out.transformed = minor_identity_field(tt, i0);
  out.e = c * out.transformed.e;
  const Eigen::MatrixXcd g_lower =
      g_upper.partialPivLu().solve(Eigen::MatrixXcd::Identity(t.dim, t.dim));
  out.residual = identity_residual(t, out.e, g_lower);
  return out;
}

}  // namespace veelab
