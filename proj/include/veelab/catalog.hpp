#pragma once
// Named vector configurations: the root systems F4+, G2+, BCn (with its
// multi-parameter deformation), BC1, the four projected F4 systems, and the
// polynomial two-dimensional prepotential family. Builders emit exact-mode
// configs whenever every component lies in Q(sqrt2, sqrt3).

#include <veelab/config.hpp>
#include <veelab/errors.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace veelab {

// Parameter map for named builders. Scalar keys hold a single value; the BCn
// deformation key "m" holds one entry per coordinate.
using Params = std::map<std::string, std::vector<double>>;

inline double scalar_param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end() || it->second.empty())
    fail(errc::invalid_argument, "missing parameter '" + key + "'");
  if (it->second.size() != 1)
    fail(errc::invalid_argument, "parameter '" + key + "' must be a single value");
  return it->second[0];
}

inline std::vector<double> list_param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end() || it->second.empty())
    fail(errc::invalid_argument, "missing parameter '" + key + "'");
  return it->second;
}

namespace detail {

inline ExactScalar rat(long num, long den = 1) { return ExactScalar(Rational(num, den)); }

inline ExactVector unit_vec(int dim, int i, ExactScalar scale = ExactScalar(1)) {
  ExactVector v(static_cast<size_t>(dim), ExactScalar(0));
  v[static_cast<size_t>(i)] = std::move(scale);
  return v;
}

// F4 positive half: short roots e_i and the half-sum vectors carry the short
// multiplicity r, long roots e_i +- e_j carry q. 4 + 12 + 8 = 24 vectors.
inline std::vector<ExactVector> f4_vectors() {
  std::vector<ExactVector> vs;
  for (int i = 0; i < 4; ++i) vs.push_back(unit_vec(4, i));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int sgn : {1, -1}) {
        ExactVector v(4, ExactScalar(0));
        v[static_cast<size_t>(i)] = rat(1);
        v[static_cast<size_t>(j)] = rat(sgn);
        vs.push_back(v);
      }
  for (int s2 : {1, -1})
    for (int s3 : {1, -1})
      for (int s4 : {1, -1})
        vs.push_back({rat(1, 2), rat(s2, 2), rat(s3, 2), rat(s4, 2)});
  return vs;
}

inline std::vector<cd> f4_mults(double r, double q) {
  std::vector<cd> cs(4, cd(r));
  cs.insert(cs.end(), 12, cd(q));
  cs.insert(cs.end(), 8, cd(r));
  return cs;
}

// Projection of F4+ along one short A1 (to the hyperplane alpha_3 = 0):
// e_i : r+2q; e_i +- e_j : q; (e_1 +- e_2 +- e_3)/2 : 2r. 13 vectors.
inline std::vector<ExactVector> f4_a1_1_vectors() {
  std::vector<ExactVector> vs;
  for (int i = 0; i < 3; ++i) vs.push_back(unit_vec(3, i));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int sgn : {1, -1}) {
        ExactVector v(3, ExactScalar(0));
        v[static_cast<size_t>(i)] = rat(1);
        v[static_cast<size_t>(j)] = rat(sgn);
        vs.push_back(v);
      }
  for (int s2 : {1, -1})
    for (int s3 : {1, -1}) vs.push_back({rat(1, 2), rat(s2, 2), rat(s3, 2)});
  return vs;
}

inline std::vector<cd> f4_a1_1_mults(double r, double q) {
  std::vector<cd> cs(3, cd(r + 2 * q));
  cs.insert(cs.end(), 6, cd(q));
  cs.insert(cs.end(), 4, cd(2 * r));
  return cs;
}

// Projection of F4+ along one long A1 (to the hyperplane alpha_2 = 0):
// e_1, e_2 : r; sqrt2 e_3 : q; (sqrt2/2) e_3 : 2r; e_1 +- e_2 : q;
// (e_1 +- e_2)/2 : 2r; e_a +- (sqrt2/2) e_3 : 2q; (e_1 +- e_2 +- sqrt2 e_3)/2 : r.
// 16 vectors.
inline std::vector<ExactVector> f4_a1_2_vectors() {
  const ExactScalar s2(0, 1), s2h(0, Rational(1, 2));
  std::vector<ExactVector> vs;
  vs.push_back(unit_vec(3, 0));
  vs.push_back(unit_vec(3, 1));
  vs.push_back(unit_vec(3, 2, s2));
  vs.push_back(unit_vec(3, 2, s2h));
  for (int sgn : {1, -1}) vs.push_back({rat(1), rat(sgn), rat(0)});
  for (int sgn : {1, -1}) vs.push_back({rat(1, 2), rat(sgn, 2), rat(0)});
  for (int a : {0, 1})
    for (int sgn : {1, -1}) {
      ExactVector v(3, ExactScalar(0));
      v[static_cast<size_t>(a)] = rat(1);
      v[2] = (sgn > 0) ? s2h : -s2h;
      vs.push_back(v);
    }
  for (int s2_ : {1, -1})
    for (int s3_ : {1, -1})
      vs.push_back({rat(1, 2), rat(s2_, 2), (s3_ > 0) ? s2h : -s2h});
  return vs;
}

inline std::vector<cd> f4_a1_2_mults(double r, double q) {
  std::vector<cd> cs = {cd(r), cd(r), cd(q), cd(2 * r)};
  cs.insert(cs.end(), 2, cd(q));
  cs.insert(cs.end(), 2, cd(2 * r));
  cs.insert(cs.end(), 4, cd(2 * q));
  cs.insert(cs.end(), 4, cd(r));
  return cs;
}

// Projection of F4+ along A2 (to the plane alpha_1 = alpha_2 = 0):
// e_1 : r; (1/sqrt3) e_2 : 3r; (2/sqrt3) e_2 : 3q; e_1 +- (1/sqrt3) e_2 : 3q;
// (e_1 +- (1/sqrt3) e_2)/2 : 3r; (e_1 +- sqrt3 e_2)/2 : r. 9 vectors.
inline std::vector<ExactVector> f4_a2_1_vectors() {
  const ExactScalar is3(0, 0, Rational(1, 3));  // 1/sqrt3 = sqrt3/3
  const ExactScalar is3h(0, 0, Rational(1, 6)), s3h(0, 0, Rational(1, 2));
  std::vector<ExactVector> vs;
  vs.push_back(unit_vec(2, 0));
  vs.push_back(unit_vec(2, 1, is3));
  vs.push_back(unit_vec(2, 1, is3 + is3));
  for (int sgn : {1, -1}) vs.push_back({rat(1), (sgn > 0) ? is3 : -is3});
  for (int sgn : {1, -1}) vs.push_back({rat(1, 2), (sgn > 0) ? is3h : -is3h});
  for (int sgn : {1, -1}) vs.push_back({rat(1, 2), (sgn > 0) ? s3h : -s3h});
  return vs;
}

inline std::vector<cd> f4_a2_1_mults(double r, double q) {
  return {cd(r), cd(3 * r), cd(3 * q), cd(3 * q), cd(3 * q), cd(3 * r), cd(3 * r), cd(r), cd(r)};
}

// Projection of F4+ along A1 x A1 (to the plane alpha_1 = alpha_3 = 0):
// e_1 : r+2q; sqrt2 e_2 : q; e_1/2 : 4r; (sqrt2/2) e_2 : 2(r+2q);
// e_1 +- (1/sqrt2) e_2 : 2q; (e_1 +- sqrt2 e_2)/2 : 2r. 8 vectors.
inline std::vector<ExactVector> f4_a1sq_vectors() {
  const ExactScalar s2(0, 1), s2h(0, Rational(1, 2));
  std::vector<ExactVector> vs;
  vs.push_back(unit_vec(2, 0));
  vs.push_back(unit_vec(2, 1, s2));
  vs.push_back(unit_vec(2, 0, rat(1, 2)));
  vs.push_back(unit_vec(2, 1, s2h));
  for (int sgn : {1, -1}) vs.push_back({rat(1), (sgn > 0) ? s2h : -s2h});
  for (int sgn : {1, -1}) vs.push_back({rat(1, 2), (sgn > 0) ? s2h : -s2h});
  return vs;
}

inline std::vector<cd> f4_a1sq_mults(double r, double q) {
  return {cd(r + 2 * q), cd(q),     cd(4 * r),  cd(2 * (r + 2 * q)),
          cd(2 * q),     cd(2 * q), cd(2 * r),  cd(2 * r)};
}

// G2 positive half: long roots sqrt3 e_1, (sqrt3 e_1 +- 3 e_2)/2 with
// multiplicity q; short roots e_2, (sqrt3 e_1 +- e_2)/2 with multiplicity p.
inline std::vector<ExactVector> g2_vectors() {
  const ExactScalar s3(0, 0, 1), s3h(0, 0, Rational(1, 2));
  return {{s3, rat(0)},  {s3h, rat(3, 2)}, {s3h, rat(-3, 2)},
          {rat(0), rat(1)}, {s3h, rat(1, 2)}, {s3h, rat(-1, 2)}};
}

inline std::vector<cd> g2_mults(double p, double q) {
  return {cd(q), cd(q), cd(q), cd(p), cd(p), cd(p)};
}

// BCn(q,r,s;m) multiplicities in table order: per i the vectors
// m_i^{-1/2} e_i : r m_i and 2 m_i^{-1/2} e_i : s m_i + q m_i(m_i-1)/2,
// then for i < j the crosses m_i^{-1/2} e_i +- m_j^{-1/2} e_j : q m_i m_j.
inline std::vector<cd> bcn_mults(double q, double r, double s, const std::vector<double>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<cd> cs;
  for (int i = 0; i < n; ++i) {
    cs.push_back(cd(r * m[static_cast<size_t>(i)]));
    cs.push_back(cd(s * m[static_cast<size_t>(i)] +
                    0.5 * q * m[static_cast<size_t>(i)] * (m[static_cast<size_t>(i)] - 1.0)));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      cs.insert(cs.end(), 2, cd(q * m[static_cast<size_t>(i)] * m[static_cast<size_t>(j)]));
  return cs;
}

inline VectorConfig bcn_config(double q, double r, double s, const std::vector<double>& m) {
  const int n = static_cast<int>(m.size());
  if (n < 1) fail(errc::invalid_argument, "parameter 'm' must be nonempty");
  for (double mi : m)
    if (mi == 0.0) fail(errc::invalid_argument, "BCn requires every m_i to be nonzero");

  std::vector<cd> cs = bcn_mults(q, r, s, m);

  // Exact mode when every m_i^{-1/2} lies in Q(sqrt2, sqrt3).
  std::vector<ExactScalar> inv_sqrt;
  bool exact = true;
  for (double mi : m) {
    std::optional<ExactScalar> root;
    if (mi > 0.0) root = exact_sqrt_rational(Rational(1) / rational_from_double(mi));
    if (!root) {
      exact = false;
      break;
    }
    inv_sqrt.push_back(*root);
  }

  if (exact) {
    std::vector<ExactVector> vs;
    for (int i = 0; i < n; ++i) {
      vs.push_back(unit_vec(n, i, inv_sqrt[static_cast<size_t>(i)]));
      vs.push_back(unit_vec(n, i, inv_sqrt[static_cast<size_t>(i)] + inv_sqrt[static_cast<size_t>(i)]));
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int sgn : {1, -1}) {
          ExactVector v(static_cast<size_t>(n), ExactScalar(0));
          v[static_cast<size_t>(i)] = inv_sqrt[static_cast<size_t>(i)];
          v[static_cast<size_t>(j)] = (sgn > 0) ? inv_sqrt[static_cast<size_t>(j)]
                                                : -inv_sqrt[static_cast<size_t>(j)];
          vs.push_back(v);
        }
    return build_exact_config(n, std::move(vs), std::move(cs));
  }

  std::vector<Eigen::VectorXcd> vs;
  std::vector<cd> roots;
  for (double mi : m) roots.push_back(1.0 / std::sqrt(cd(mi)));
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v[i] = roots[static_cast<size_t>(i)];
    vs.push_back(v);
    vs.push_back(2.0 * v);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int sgn : {1, -1}) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
        v[i] = roots[static_cast<size_t>(i)];
        v[j] = static_cast<double>(sgn) * roots[static_cast<size_t>(j)];
        vs.push_back(v);
      }
  return build_numeric_config(n, std::move(vs), std::move(cs));
}

}  // namespace detail

inline VectorConfig build_f4(double r, double q) {
  return build_exact_config(4, detail::f4_vectors(), detail::f4_mults(r, q));
}
inline VectorConfig build_f4_a1_1(double r, double q) {
  return build_exact_config(3, detail::f4_a1_1_vectors(), detail::f4_a1_1_mults(r, q));
}
inline VectorConfig build_f4_a1_2(double r, double q) {
  return build_exact_config(3, detail::f4_a1_2_vectors(), detail::f4_a1_2_mults(r, q));
}
inline VectorConfig build_f4_a2_1(double r, double q) {
  return build_exact_config(2, detail::f4_a2_1_vectors(), detail::f4_a2_1_mults(r, q));
}
inline VectorConfig build_f4_a1sq(double r, double q) {
  return build_exact_config(2, detail::f4_a1sq_vectors(), detail::f4_a1sq_mults(r, q));
}
inline VectorConfig build_g2(double p, double q) {
  return build_exact_config(2, detail::g2_vectors(), detail::g2_mults(p, q));
}
inline VectorConfig build_bcn(double q, double r, double s, const std::vector<double>& m) {
  return detail::bcn_config(q, r, s, m);
}
inline VectorConfig build_bc1(double r, double s) {
  return build_exact_config(1, {{ExactScalar(1)}, {ExactScalar(2)}}, {cd(r), cd(s)});
}

// Third-derivative tensor of F(t) = 1/2 (t^1)^2 t^2 + coef (t^2)^pow on C^2:
// F_112 = 1, F_222 = coef pow(pow-1)(pow-2) (t^2)^(pow-3), all else zero.
inline std::vector<Eigen::MatrixXcd> poly2d_tensor(const Eigen::VectorXcd& t, double coef,
                                                   double pow) {
  if (t.size() != 2) fail(errc::dimension_mismatch, "poly2d lives on C^2");
  const cd f3 = cd(coef * pow * (pow - 1.0) * (pow - 2.0)) * std::pow(t[1], cd(pow - 3.0));
  Eigen::MatrixXcd f1(2, 2), f2(2, 2);
  f1 << cd(0), cd(1), cd(1), cd(0);
  f2 << cd(1), cd(0), cd(0), f3;
  return {f1, f2};
}

struct CatalogEntry {
  std::string name;
  int dim = 0;  // 0 when the dimension depends on parameters (BCn: len(m))
  std::string parameters;
  Params defaults;
  std::string relations;  // parameter loci where commutativity holds
  std::function<VectorConfig(const Params&)> builder;  // null for poly2d
};

inline const std::vector<CatalogEntry>& list_catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"BCn", 0, "q, r, s, m (list; dim = len(m), all m_i nonzero)",
       {{"q", {1}}, {"r", {-8}}, {"s", {1}}, {"m", {1, 1}}},
       "r = -8s - 2q(N-2), N = sum(m_i)",
       [](const Params& p) {
         return build_bcn(scalar_param(p, "q"), scalar_param(p, "r"), scalar_param(p, "s"),
                          list_param(p, "m"));
       }},
      {"BC1", 1, "r, s",
       {{"r", {1}}, {"s", {1}}},
       "none needed in dimension one (identity field needs r+8s != 0)",
       [](const Params& p) { return build_bc1(scalar_param(p, "r"), scalar_param(p, "s")); }},
      {"F4+", 4, "r (short), q (long)",
       {{"r", {-2}}, {"q", {1}}},
       "r = -2q, r = -4q",
       [](const Params& p) { return build_f4(scalar_param(p, "r"), scalar_param(p, "q")); }},
      {"G2+", 2, "p (short), q (long)",
       {{"p", {-3}}, {"q", {1}}},
       "p = -3q, p = -9q",
       [](const Params& p) { return build_g2(scalar_param(p, "p"), scalar_param(p, "q")); }},
      {"F4_A1_1", 3, "r, q",
       {{"r", {-2}}, {"q", {1}}},
       "r = -2q, r = -4q",
       [](const Params& p) { return build_f4_a1_1(scalar_param(p, "r"), scalar_param(p, "q")); }},
      {"F4_A1_2", 3, "r, q",
       {{"r", {-2}}, {"q", {1}}},
       "r = -2q, r = -4q",
       [](const Params& p) { return build_f4_a1_2(scalar_param(p, "r"), scalar_param(p, "q")); }},
      {"F4_A2_1", 2, "r, q",
       {{"r", {-2}}, {"q", {1}}},
       "r = -2q, r = -4q",
       [](const Params& p) { return build_f4_a2_1(scalar_param(p, "r"), scalar_param(p, "q")); }},
      {"F4_A1sq", 2, "r, q",
       {{"r", {-2}}, {"q", {1}}},
       "r = -2q, r = -4q",
       [](const Params& p) { return build_f4_a1sq(scalar_param(p, "r"), scalar_param(p, "q")); }},
      {"poly2d", 2, "coef, pow (prepotential 1/2 (t^1)^2 t^2 + coef (t^2)^pow)",
       {{"coef", {1}}, {"pow", {4}}},
       "all parameters (two-dimensional prepotential family)",
       nullptr},
  };
  return entries;
}

inline std::string catalog_names() {
  std::string out;
  for (const auto& e : list_catalog()) {
    if (!out.empty()) out += ", ";
    out += e.name;
  }
  return out;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : list_catalog())
    if (e.name == name) return e;
  fail(errc::unknown_target, "unknown catalog name '" + name + "'; valid names: " + catalog_names());
}

inline VectorConfig build_named(const std::string& name, const Params& params) {
  const CatalogEntry& e = catalog_entry(name);
  if (!e.builder)
    fail(errc::invalid_argument,
         "'" + name + "' is a prepotential family, not a vector configuration; evaluate its "
         "tensor via poly2d_tensor or run it directly as a CLI target");
  return e.builder(params);
}

// One row of the closed-form identity-field table: the configuration, the
// reduced multiplicities cbar (aligned with cfg vector order), and the
// constants c0, H0 of e = c0 H^{-1} sum cbar_a sin(2(a,x)) da with
// H = H0 + sum cbar_a sin^2((a,x)).
struct ClosedFormCase {
  int case_id = 0;
  std::string target;
  VectorConfig cfg;
  std::vector<cd> cbar;
  cd c0;
  cd H0;
};

namespace detail {

inline bool relation_holds(double lhs, double rhs) {
  return std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs) + std::abs(rhs));
}

}  // namespace detail

inline ClosedFormCase closed_form_case(const std::string& target, const Params& params) {
  ClosedFormCase out;
  out.target = target;

  const bool f4_family = target == "F4+" || target == "F4_A1_1" || target == "F4_A1_2" ||
                         target == "F4_A2_1" || target == "F4_A1sq";
  if (f4_family) {
    const double r = scalar_param(params, "r"), q = scalar_param(params, "q");
    if (q == 0.0) fail(errc::bad_case_parameters, "q must be nonzero for the " + target + " cases");
    out.cfg = build_named(target, params);
    if (detail::relation_holds(r, -2 * q)) {
      out.case_id = 1;
      out.c0 = cd(-1.0 / (4 * q));
      out.H0 = cd(0);
      out.cbar = out.cfg.mults;
    } else if (detail::relation_holds(r, -4 * q)) {
      out.case_id = 2;
      out.c0 = cd(1.0 / (4 * q));
      out.H0 = cd(36 * q);
      Params reduced = params;
      reduced["q"] = {0};
      out.cbar = build_named(target, reduced).mults;
    } else {
      fail(errc::bad_case_parameters,
           target + " has a closed-form identity field only for r = -2q or r = -4q");
    }
    return out;
  }

  if (target == "G2+") {
    const double p = scalar_param(params, "p"), q = scalar_param(params, "q");
    if (q == 0.0) fail(errc::bad_case_parameters, "q must be nonzero for the G2+ cases");
    out.cfg = build_g2(p, q);
    if (detail::relation_holds(p, -3 * q)) {
      out.case_id = 3;
      out.c0 = cd(-1.0 / (9 * q));
      out.H0 = cd(0);
      out.cbar = out.cfg.mults;
    } else if (detail::relation_holds(p, -9 * q)) {
      out.case_id = 4;
      out.c0 = cd(1.0 / (9 * q));
      out.H0 = cd(27 * q);
      out.cbar = detail::g2_mults(p, 0.0);
    } else {
      fail(errc::bad_case_parameters,
           "G2+ has a closed-form identity field only for p = -3q or p = -9q");
    }
    return out;
  }

  if (target == "BCn") {
    const double q = scalar_param(params, "q"), r = scalar_param(params, "r"),
                 s = scalar_param(params, "s");
    const std::vector<double> m = list_param(params, "m");
    if (m.size() < 2)
      fail(errc::bad_case_parameters, "the BCn closed form needs n >= 2; use BC1 in dimension one");
    if (q == 0.0) fail(errc::bad_case_parameters, "q must be nonzero for the BCn case");
    double msum = 0.0;
    for (double mi : m) msum += mi;
    if (!detail::relation_holds(r, -8 * s - 2 * q * (msum - 2)))
      fail(errc::bad_case_parameters,
           "BCn has a closed-form identity field only for r = -8s - 2q(N-2), N = sum(m_i)");
    out.case_id = 5;
    out.cfg = build_bcn(q, r, s, m);
    out.cbar = detail::bcn_mults(0.0, r, 0.0, m);
    out.c0 = cd(-1.0 / (4 * q));
    out.H0 = cd(r * (2 * s - q) / q);
    return out;
  }

  if (target == "BC1") {
    const double r = scalar_param(params, "r"), s = scalar_param(params, "s");
    if (r + 8 * s == 0.0)
      fail(errc::bad_case_parameters, "the BC1 closed form needs r + 8s != 0");
    out.case_id = 6;
    out.cfg = build_bc1(r, s);
    out.cbar = {cd(r), cd(0)};
    out.c0 = cd(-1.0 / (2 * (r + 8 * s)));
    out.H0 = cd(-r * (r + 4 * s) / (r + 8 * s));
    return out;
  }

  fail(errc::unknown_target,
       "no closed-form identity case for '" + target + "'; known targets: F4+, F4_A1_1, "
       "F4_A1_2, F4_A2_1, F4_A1sq, G2+, BCn, BC1");
}

}  // namespace veelab
