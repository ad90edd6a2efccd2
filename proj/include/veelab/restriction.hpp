#pragma once
// Restriction of a configuration to the orthogonal complement of a subsystem:
// B = A intersect span(generators), the orthonormal frame of
// W_B = { x : (b, x) = 0 for all b in B }, the projected configuration whose
// prepotential is F_B = sum_{a in A \ B} c_a f((a, xi)), tangency checks for
// closed-form identity fields, and an orthogonal-invariant Gram signature for
// comparing configurations up to orthogonal maps.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "veelab/catalog.hpp"
#include "veelab/config.hpp"
#include "veelab/errors.hpp"
#include "veelab/exact_linalg.hpp"
#include "veelab/identity.hpp"
#include "veelab/prepotential.hpp"
#include "veelab/vee.hpp"

namespace veelab {

struct RestrictionFrame {
  std::vector<int> excluded;            // ambient vectors lying in span(B)
  std::vector<Eigen::VectorXcd> frame;  // f_1..f_n, ambient coordinates
  std::vector<ExactVector> eframe;      // exact mirror when exact == true
  VectorConfig projected;               // coordinates (a, f_1..f_n), merged
  bool exact = false;
  int ambient_dim = 0;

  int n() const { return static_cast<int>(frame.size()); }

  // Frame coordinates of an ambient vector, and the ambient point of a frame
  // coordinate vector.
  Eigen::VectorXcd coords(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd out(n());
    for (int i = 0; i < n(); ++i) out(i) = inner(frame[static_cast<size_t>(i)], x);
    return out;
  }
  Eigen::VectorXcd ambient(const Eigen::VectorXcd& xi) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(ambient_dim);
    for (int i = 0; i < n(); ++i) out += xi(i) * frame[static_cast<size_t>(i)];
    return out;
  }
};

// Indices of all configuration vectors inside span(generators).
inline std::vector<int> subsystem(const VectorConfig& cfg,
                                  const std::vector<Eigen::VectorXcd>& generators) {
  if (generators.empty()) fail(errc::invalid_argument, "subsystem needs at least one generator");
  Eigen::MatrixXcd g(cfg.dim, static_cast<int>(generators.size()));
  for (size_t j = 0; j < generators.size(); ++j) {
    if (static_cast<int>(generators[j].size()) != cfg.dim)
      fail(errc::dimension_mismatch, "generator dimension does not match configuration");
    g.col(static_cast<long>(j)) = generators[j];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(g);
  std::vector<int> out;
  for (int i = 0; i < cfg.size(); ++i) {
    const Eigen::VectorXcd& a = cfg.vecs[static_cast<size_t>(i)];
    const Eigen::VectorXcd res = g * qr.solve(a) - a;
    if (res.norm() <= 1e-10 * (1.0 + a.norm())) out.push_back(i);
  }
  return out;
}

inline std::vector<int> subsystem(const VectorConfig& cfg,
                                  const std::vector<ExactVector>& generators) {
  if (generators.empty()) fail(errc::invalid_argument, "subsystem needs at least one generator");
  if (!cfg.exact()) {
    std::vector<Eigen::VectorXcd> numeric;
    for (const auto& gen : generators) numeric.push_back(to_numeric(gen));
    return subsystem(cfg, numeric);
  }
  ExactMatrix rows;
  for (const auto& gen : generators) {
    if (static_cast<int>(gen.size()) != cfg.dim)
      fail(errc::dimension_mismatch, "generator dimension does not match configuration");
    rows.push_back(gen);
  }
  const std::vector<int> pivots = exact_rref(rows);
  std::vector<int> out;
  for (int i = 0; i < cfg.size(); ++i)
    if (exact_in_span(rows, pivots, cfg.evecs[static_cast<size_t>(i)])) out.push_back(i);
  return out;
}

namespace detail {

// Bilinear Gram-Schmidt with pivoting; returns false when the form restricted
// to the span is degenerate (isotropic radical).
inline bool bilinear_orthonormalize(std::vector<Eigen::VectorXcd>& work,
                                    std::vector<Eigen::VectorXcd>& out) {
  while (!work.empty()) {
    size_t best = 0;
    double bestmag = -1.0;
    for (size_t w = 0; w < work.size(); ++w) {
      const double m = std::abs(cd(work[w].transpose() * work[w]));
      if (m > bestmag) {
        bestmag = m;
        best = w;
      }
    }
    if (bestmag <= 1e-12 * work[best].squaredNorm() && work.size() > 1) {
      size_t bi = 0, bj = 1;
      double cross = -1.0;
      for (size_t wi = 0; wi < work.size(); ++wi)
        for (size_t wj = wi + 1; wj < work.size(); ++wj) {
          const double m = std::abs(cd(work[wi].transpose() * work[wj]));
          if (m > cross) {
            cross = m;
            bi = wi;
            bj = wj;
          }
        }
      if (cross > 1e-12 * work[bi].norm() * work[bj].norm()) {
        work[bi] += work[bj];
        best = bi;
        bestmag = std::abs(cd(work[best].transpose() * work[best]));
      }
    }
    if (bestmag <= 1e-12 * work[best].squaredNorm()) return false;
    Eigen::VectorXcd v = work[best];
    v /= std::sqrt(cd(v.transpose() * v));
    work.erase(work.begin() + static_cast<long>(best));
    // two deflation passes to hold (f_i, f_j) = delta_ij near working precision
    for (int pass = 0; pass < 2; ++pass)
      for (auto& w : work) w -= cd(v.transpose() * w) * v;
    out.push_back(v);
  }
  return true;
}

}  // namespace detail

// Frame and projected configuration for the subsystem with the given ambient
// indices.  Ambient vectors inside span(B) are excluded from the projection
// whether or not they are listed: F_B ranges over A \ (A intersect span(B)).
inline RestrictionFrame restrict(const VectorConfig& cfg, const std::vector<int>& b_indices) {
  for (int i : b_indices)
    if (i < 0 || i >= cfg.size()) fail(errc::invalid_argument, "subsystem index out of range");

  RestrictionFrame fr;
  fr.ambient_dim = cfg.dim;

  if (b_indices.empty()) {
    fr.exact = cfg.exact();
    for (int i = 0; i < cfg.dim; ++i) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(cfg.dim);
      e(i) = 1.0;
      fr.frame.push_back(e);
      if (fr.exact) {
        ExactVector ev(static_cast<size_t>(cfg.dim));
        ev[static_cast<size_t>(i)] = ExactScalar(1);
        fr.eframe.push_back(ev);
      }
    }
    fr.projected = cfg;
    return fr;
  }

  // Exact route: nullspace plus Gram-Schmidt over the quadratic field.  Falls
  // back to numeric when a normalization needs a square root off the field.
  if (cfg.exact()) {
    ExactMatrix rows;
    for (int i : b_indices) rows.push_back(cfg.evecs[static_cast<size_t>(i)]);
    ExactMatrix span_rows = rows;
    const std::vector<int> span_pivots = exact_rref(span_rows);
    std::vector<ExactVector> basis = exact_nullspace(rows, cfg.dim);

    bool ok = true;
    std::vector<ExactVector> ef;
    for (auto& v : basis) {
      for (const auto& f : ef) {
        ExactScalar c = inner_exact(f, v);
        if (c.is_zero()) continue;
        for (size_t j = 0; j < v.size(); ++j) v[j] -= c * f[j];
      }
      ExactScalar n2;
      for (const auto& comp : v) n2 += comp * comp;
      if (n2.is_zero()) fail(errc::isotropic_complement, "form degenerates on the complement");
      std::optional<ExactScalar> root = exact_sqrt(n2);
      if (!root) {
        ok = false;
        break;
      }
      ExactScalar inv = root->inverse();
      for (auto& comp : v) comp *= inv;
      ef.push_back(v);
    }
    if (ok) {
      fr.exact = true;
      fr.eframe = std::move(ef);
      for (const auto& f : fr.eframe) fr.frame.push_back(to_numeric(f));

      std::vector<ExactVector> pvecs;
      std::vector<cd> pmults;
      for (int i = 0; i < cfg.size(); ++i) {
        const ExactVector& a = cfg.evecs[static_cast<size_t>(i)];
        if (exact_in_span(span_rows, span_pivots, a)) {
          fr.excluded.push_back(i);
          continue;
        }
        ExactVector proj;
        for (const auto& f : fr.eframe) proj.push_back(inner_exact(a, f));
        bool merged = false;
        for (size_t k = 0; k < pvecs.size(); ++k) {
          bool equal = true;
          for (size_t j = 0; j < proj.size(); ++j)
            if (!(pvecs[k][j] - proj[j]).is_zero()) {
              equal = false;
              break;
            }
          if (equal) {
            pmults[k] += cfg.mults[static_cast<size_t>(i)];
            merged = true;
            break;
          }
        }
        if (!merged) {
          pvecs.push_back(std::move(proj));
          pmults.push_back(cfg.mults[static_cast<size_t>(i)]);
        }
      }
      fr.projected =
          build_exact_config(static_cast<int>(fr.eframe.size()), std::move(pvecs), std::move(pmults));
      return fr;
    }
  }

  // Numeric route.
  Eigen::MatrixXcd rows(static_cast<int>(b_indices.size()), cfg.dim);
  for (size_t r = 0; r < b_indices.size(); ++r)
    rows.row(static_cast<long>(r)) = cfg.vecs[static_cast<size_t>(b_indices[r])].transpose();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(rows);
  const Eigen::MatrixXcd kernel = lu.kernel();
  std::vector<Eigen::VectorXcd> work;
  for (int c = 0; c < kernel.cols(); ++c) work.push_back(kernel.col(c));
  if (!detail::bilinear_orthonormalize(work, fr.frame))
    fail(errc::isotropic_complement, "form degenerates on the complement");

  Eigen::MatrixXcd span_cols(cfg.dim, static_cast<int>(b_indices.size()));
  for (size_t r = 0; r < b_indices.size(); ++r)
    span_cols.col(static_cast<long>(r)) = cfg.vecs[static_cast<size_t>(b_indices[r])];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(span_cols);

  std::vector<Eigen::VectorXcd> pvecs;
  std::vector<cd> pmults;
  for (int i = 0; i < cfg.size(); ++i) {
    const Eigen::VectorXcd& a = cfg.vecs[static_cast<size_t>(i)];
    if ((span_cols * qr.solve(a) - a).norm() <= 1e-10 * (1.0 + a.norm())) {
      fr.excluded.push_back(i);
      continue;
    }
    Eigen::VectorXcd proj(fr.n());
    for (int k = 0; k < fr.n(); ++k) proj(k) = inner(a, fr.frame[static_cast<size_t>(k)]);
    bool merged = false;
    for (size_t k = 0; k < pvecs.size(); ++k)
      if ((pvecs[k] - proj).norm() <= 1e-12 * (1.0 + proj.norm())) {
        pmults[k] += cfg.mults[static_cast<size_t>(i)];
        merged = true;
        break;
      }
    if (!merged) {
      pvecs.push_back(std::move(proj));
      pmults.push_back(cfg.mults[static_cast<size_t>(i)]);
    }
  }
  fr.projected = build_numeric_config(fr.n(), std::move(pvecs), std::move(pmults));
  return fr;
}

inline RestrictionFrame restrict(const VectorConfig& cfg,
                                 const std::vector<Eigen::VectorXcd>& generators) {
  return restrict(cfg, subsystem(cfg, generators));
}

inline RestrictionFrame restrict(const VectorConfig& cfg,
                                 const std::vector<ExactVector>& generators) {
  return restrict(cfg, subsystem(cfg, generators));
}

struct RestrictedCommutativity {
  RestrictionFrame frame;
  double residual = 0.0;              // max over sampled points of W_B
  double min_abs_c = 0.0;             // min |C_delta| over subsystem classes
  std::vector<CHypothesisFlag> flags; // near-vanishing C_delta certificates
};

// Commutativity of the projected prepotential, together with the C_delta
// hypothesis data for the subsystem's collinearity classes.  The minimum |C|
// is reported rather than used as a gate: the hypothesis can fail only on a
// measure-zero parameter set and the residual itself is the ground truth.
inline RestrictedCommutativity restricted_commutativity(const VectorConfig& cfg,
                                                        const std::vector<int>& b_indices,
                                                        int points = 8, std::uint64_t seed = 1,
                                                        const Kernel& kernel = Kernel::trig()) {
  RestrictedCommutativity out;
  out.frame = restrict(cfg, b_indices);
  out.min_abs_c = std::numeric_limits<double>::infinity();

  const auto classes = collinear_classes(cfg);
  for (const auto& cls : classes) {
    bool in_b = false;
    for (int m : cls.members)
      in_b = in_b || std::find(out.frame.excluded.begin(), out.frame.excluded.end(), m) !=
                         out.frame.excluded.end();
    if (!in_b) continue;
    const size_t k = cls.members.size();
    std::vector<std::vector<size_t>> subsets;
    if (k <= 20 && (size_t{1} << k) <= 40) {
      for (size_t mask = 1; mask < (size_t{1} << k); ++mask) {
        std::vector<size_t> sub;
        for (size_t j = 0; j < k; ++j)
          if (mask & (size_t{1} << j)) sub.push_back(j);
        subsets.push_back(std::move(sub));
      }
    } else {
      for (size_t j = 0; j < k; ++j) subsets.push_back({j});
      std::vector<size_t> all(k);
      for (size_t j = 0; j < k; ++j) all[j] = j;
      subsets.push_back(std::move(all));
    }
    for (const auto& sub : subsets) {
      cd c = 0.0;
      double mag = 0.0;
      std::vector<int> ids;
      for (size_t j : sub) {
        const cd term = cfg.mults[static_cast<size_t>(cls.members[j])] * cls.ratios[j] * cls.ratios[j];
        c += term;
        mag += std::abs(term);
        ids.push_back(cls.members[j]);
      }
      out.min_abs_c = std::min(out.min_abs_c, std::abs(c));
      if (std::abs(c) <= 1e-12 * (1.0 + mag)) out.flags.push_back({cls.rep, ids, c});
    }
  }

  const auto pts = sample_points(out.frame.projected, kernel, points, seed);
  for (const auto& p : pts) {
    const DerivativeTensor t = third_derivative_tensor(out.frame.projected, kernel, p.x);
    out.residual = std::max(out.residual, commutativity_residual(t));
  }
  return out;
}

struct TangencyReport {
  bool tangent = false;
  double max_normal = 0.0;  // Hermitian norm of e minus its W_B component
};

// Evaluates the closed-form ambient field at sampled points of W_B and
// measures the component sticking out of the wall.
inline TangencyReport tangency_check(const ClosedFormCase& cf, const RestrictionFrame& fr,
                                     int points = 8, std::uint64_t seed = 1) {
  if (cf.cfg.dim != fr.ambient_dim)
    fail(errc::dimension_mismatch, "field and frame live in different dimensions");
  TangencyReport out;
  const auto pts = sample_points(fr.projected, Kernel::trig(), points, seed);
  for (const auto& p : pts) {
    const Eigen::VectorXcd x = fr.ambient(p.x);
    const ClosedFormSample s = closed_form_identity(cf, x);
    Eigen::VectorXcd tangential = Eigen::VectorXcd::Zero(fr.ambient_dim);
    for (int i = 0; i < fr.n(); ++i)
      tangential += inner(s.e, fr.frame[static_cast<size_t>(i)]) * fr.frame[static_cast<size_t>(i)];
    out.max_normal =
        std::max(out.max_normal, (s.e - tangential).norm() / (1.0 + s.e.norm()));
  }
  out.tangent = out.max_normal < tol::tangency;
  return out;
}

// Orthogonal-invariant fingerprint of a configuration: multiset of pairwise
// data (multiplicities, norms, |pairing|) with inner products scaled by
// `scale`, so configs equal up to an orthogonal map times 1/sqrt(scale)
// compare equal.  Entries are quantized on a 1e-9 grid.
struct GramSignature {
  std::vector<std::vector<long long>> diag;
  std::vector<std::vector<long long>> pairs;
  bool operator==(const GramSignature&) const = default;
};

inline GramSignature gram_signature(const VectorConfig& cfg, double scale = 1.0) {
  const auto q = [](double x) { return std::llround(x / tol::plane_key); };
  const auto qq = [&](cd z) { return std::array<long long, 2>{q(z.real()), q(z.imag())}; };
  GramSignature sig;
  std::vector<std::array<long long, 4>> ends(static_cast<size_t>(cfg.size()));
  for (int i = 0; i < cfg.size(); ++i) {
    const cd n2 = scale * inner(cfg.vecs[static_cast<size_t>(i)], cfg.vecs[static_cast<size_t>(i)]);
    const auto m = qq(cfg.mults[static_cast<size_t>(i)]);
    const auto nn = qq(n2);
    ends[static_cast<size_t>(i)] = {m[0], m[1], nn[0], nn[1]};
    sig.diag.push_back({m[0], m[1], nn[0], nn[1]});
  }
  for (int i = 0; i < cfg.size(); ++i)
    for (int j = i + 1; j < cfg.size(); ++j) {
      auto a = ends[static_cast<size_t>(i)];
      auto b = ends[static_cast<size_t>(j)];
      if (b < a) std::swap(a, b);
      const double ip =
          std::abs(scale * inner(cfg.vecs[static_cast<size_t>(i)], cfg.vecs[static_cast<size_t>(j)]));
      sig.pairs.push_back({a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3], q(ip)});
    }
  std::sort(sig.diag.begin(), sig.diag.end());
  std::sort(sig.pairs.begin(), sig.pairs.end());
  return sig;
}

}  // namespace veelab
