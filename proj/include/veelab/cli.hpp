#pragma once
// Front end shared by the veelab binary and the end-to-end tests: resolve a
// catalog family or a configuration file, run the requested check suite, and
// emit reports with a fixed field order so identical runs (including the
// seed) serialize to byte-identical JSON.  Exit contract: 0 = all verdicts
// pass, 2 = pass with hypothesis warnings, 1 = failed verdict or error.

#include <veelab/catalog.hpp>
#include <veelab/config.hpp>
#include <veelab/errors.hpp>
#include <veelab/identity.hpp>
#include <veelab/prepotential.hpp>
#include <veelab/restriction.hpp>
#include <veelab/solver.hpp>
#include <veelab/vee.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace veelab::cli {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  std::string verb = "check";  // check | identity | restrict | scan | catalog
  std::string target;          // catalog name or configuration file path
  Params set;                  // parameter substitutions
  int points = 20;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  bool json = false;
  std::vector<std::string> checks;   // empty = verb default
  int i0 = 0;                        // pivot for minors / wdvv metric slice
  std::string kernel = "trig";       // trig | rational
  std::vector<std::string> compare;  // identity routes to cross-check
  std::vector<int> along;            // restrict: subsystem member indices
  std::string free_name;             // scan: varied parameter
  double lo = 0.0, hi = 0.0;
  bool has_range = false;
  int grid = 64;
};

struct CheckEntry {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::string verb;
  std::string target;
  std::string digest;
  Params set;  // effective parameters (defaults merged with substitutions)
  std::string kernel;
  int points = 0;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int sample_count = 0;        // points actually drawn
  double min_clearance = 0.0;  // worst pole clearance among them
  std::vector<CheckEntry> checks;
  std::vector<CHypothesisFlag> c_flags;  // near-vanishing C_delta certificates
  int rank_p = -1;                       // pivot-slice rank; -1 = not computed
  int g_nondegenerate = -1;              // 1 | 0 | -1 = not computed
  ordered_json extra = ordered_json::object();  // verb-specific payload

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
  }
  bool warnings() const { return !c_flags.empty(); }
  int exit_status() const { return pass() ? (warnings() ? 2 : 0) : 1; }
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string num17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string hex16(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline Kernel kernel_from_name(const std::string& name) {
  if (name == "trig") return Kernel::trig();
  if (name == "rational") return Kernel::rational();
  fail(errc::invalid_argument, "kernel must be 'trig' or 'rational', got '" + name + "'");
}

// Deterministic sampling for the two-dimensional polynomial family; the only
// guarded locus is t^2 = 0 where fractional powers branch.
inline std::vector<PointSample> poly2d_points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<PointSample> out;
  for (int p = 0; p < count; ++p) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 1000) fail(errc::sampling_exhausted, "no point clear of t^2 = 0");
      Eigen::VectorXcd x(2);
      for (int i = 0; i < 2; ++i) {
        const double re = u(rng), im = u(rng);
        x[i] = cd(re, im);
      }
      const double clear = std::abs(x[1]);
      if (clear >= tol::pole_clearance) {
        out.push_back({std::move(x), seed, clear});
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

inline std::string config_digest(const VectorConfig& cfg) {
  std::string s = std::to_string(cfg.dim) + (cfg.exact() ? ";exact" : ";numeric");
  for (int a = 0; a < cfg.size(); ++a) {
    s += ";";
    if (cfg.exact()) {
      for (const auto& comp : cfg.evecs[static_cast<size_t>(a)]) s += format_exact(comp) + ",";
    } else {
      for (int i = 0; i < cfg.dim; ++i) {
        const cd v = cfg.vecs[static_cast<size_t>(a)][i];
        s += detail::num17(v.real()) + "," + detail::num17(v.imag()) + ",";
      }
    }
    const cd m = cfg.mults[static_cast<size_t>(a)];
    s += "|" + detail::num17(m.real()) + "," + detail::num17(m.imag());
  }
  return detail::hex16(detail::fnv1a(s));
}

// --------------------------------------------------------------------------
// configuration files: { "dim": N, "vectors": [[component, ...], ...],
//   "multiplicities": [number | {"re":, "im":}, ...] } where a component is a
// number or an exact token; a single numeric component demotes the whole
// configuration to numeric mode.
// --------------------------------------------------------------------------

inline VectorConfig parse_config_json(const ordered_json& j, const std::string& where) {
  auto bad = [&where](const std::string& what) -> void {
    fail(errc::parse_error, where + ": " + what);
  };
  if (!j.is_object()) bad("top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) bad("'dim' must be an integer");
  if (!j.contains("vectors") || !j["vectors"].is_array()) bad("'vectors' must be an array");
  if (!j.contains("multiplicities") || !j["multiplicities"].is_array())
    bad("'multiplicities' must be an array");
  const int dim = j["dim"].get<int>();
  const auto& jv = j["vectors"];
  const auto& jm = j["multiplicities"];
  if (jm.size() != jv.size())
    fail(errc::dimension_mismatch, where + ": " + std::to_string(jm.size()) +
                                       " multiplicities for " + std::to_string(jv.size()) +
                                       " vectors");

  bool all_exact = true;
  for (size_t a = 0; a < jv.size(); ++a) {
    const auto& row = jv[a];
    if (!row.is_array()) bad("vectors[" + std::to_string(a) + "] must be an array");
    if (static_cast<int>(row.size()) != dim)
      fail(errc::dimension_mismatch, where + ": vectors[" + std::to_string(a) + "] has " +
                                         std::to_string(row.size()) + " components, dim is " +
                                         std::to_string(dim));
    for (size_t i = 0; i < row.size(); ++i) {
      if (row[i].is_number())
        all_exact = false;
      else if (!row[i].is_string())
        bad("vectors[" + std::to_string(a) + "][" + std::to_string(i) +
            "] must be a number or an exact token string");
    }
  }

  std::vector<cd> mults;
  for (size_t a = 0; a < jm.size(); ++a) {
    const auto& m = jm[a];
    if (m.is_number()) {
      mults.emplace_back(m.get<double>(), 0.0);
    } else if (m.is_object() && m.contains("re") && m.contains("im") && m["re"].is_number() &&
               m["im"].is_number()) {
      mults.emplace_back(m["re"].get<double>(), m["im"].get<double>());
    } else {
      bad("multiplicities[" + std::to_string(a) + "] must be a number or {\"re\":, \"im\":}");
    }
  }

  auto component = [&](size_t a, size_t i) -> ExactScalar {
    try {
      return parse_exact(jv[a][i].get<std::string>());
    } catch (const error& e) {
      fail(errc::parse_error, where + ": vectors[" + std::to_string(a) + "][" +
                                  std::to_string(i) + "]: " + e.what());
    }
  };

  if (all_exact) {
    std::vector<ExactVector> vecs;
    for (size_t a = 0; a < jv.size(); ++a) {
      ExactVector v;
      for (size_t i = 0; i < jv[a].size(); ++i) v.push_back(component(a, i));
      vecs.push_back(std::move(v));
    }
    return build_exact_config(dim, std::move(vecs), std::move(mults));
  }
  std::vector<Eigen::VectorXcd> vecs;
  for (size_t a = 0; a < jv.size(); ++a) {
    Eigen::VectorXcd v(dim);
    for (size_t i = 0; i < jv[a].size(); ++i)
      v[static_cast<long>(i)] = jv[a][i].is_number() ? cd(jv[a][i].get<double>(), 0.0)
                                                     : cd(component(a, i).to_double(), 0.0);
    vecs.push_back(std::move(v));
  }
  return build_numeric_config(dim, std::move(vecs), std::move(mults));
}

inline VectorConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, path + ": cannot open file");
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::parse_error, path + ": " + e.what());  // includes the byte offset
  }
  return parse_config_json(j, path);
}

// --------------------------------------------------------------------------
// target resolution and the check runner
// --------------------------------------------------------------------------

namespace detail {

struct ResolvedTarget {
  VectorConfig cfg;   // unset for the polynomial family
  bool poly2d = false;
  Params params;      // effective parameters; empty for file targets
  std::string name;
  bool from_file = false;
};

inline ResolvedTarget resolve_target(const RunConfig& rc) {
  ResolvedTarget out;
  out.name = rc.target;
  const auto& entries = list_catalog();
  const bool is_catalog = std::any_of(entries.begin(), entries.end(),
                                      [&](const CatalogEntry& e) { return e.name == rc.target; });
  const bool file_like = rc.target.find('/') != std::string::npos ||
                         rc.target.find('.') != std::string::npos;
  if (!is_catalog && (file_like || std::filesystem::exists(rc.target))) {
    if (!rc.set.empty())
      fail(errc::invalid_argument, "--set applies to catalog targets, not configuration files");
    out.from_file = true;
    out.cfg = parse_config_file(rc.target);
    return out;
  }
  const CatalogEntry& e = catalog_entry(rc.target);  // unknown names list the catalog
  out.params = e.defaults;
  for (const auto& [k, v] : rc.set) out.params[k] = v;
  if (e.builder == nullptr)
    out.poly2d = true;
  else
    out.cfg = e.builder(out.params);
  return out;
}

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"vee",      "condition2", "commute", "wdvv",
                                                 "identity", "restrict",   "scan"};
  return names;
}

}  // namespace detail

inline CheckReport run_check(const RunConfig& rc) {
  if (!(rc.tol > 0.0)) fail(errc::invalid_argument, "tolerance must be positive");
  if (rc.points < 1) fail(errc::invalid_argument, "point count must be at least 1");

  CheckReport rep;
  rep.verb = rc.verb;
  rep.target = rc.target;
  rep.kernel = rc.kernel;
  rep.points = rc.points;
  rep.seed = rc.seed;
  rep.tol = rc.tol;

  if (rc.verb == "catalog") {
    if (!rc.target.empty()) catalog_entry(rc.target);  // throws with the valid names
    ordered_json arr = ordered_json::array();
    for (const auto& e : list_catalog()) {
      if (!rc.target.empty() && e.name != rc.target) continue;
      ordered_json row;
      row["name"] = e.name;
      row["dim"] = e.dim;
      row["parameters"] = e.parameters;
      ordered_json defs = ordered_json::object();
      for (const auto& [k, v] : e.defaults) defs[k] = v;
      row["defaults"] = defs;
      row["relations"] = e.relations;
      arr.push_back(row);
    }
    rep.extra["entries"] = arr;
    return rep;
  }

  if (rc.target.empty()) fail(errc::invalid_argument, "verb '" + rc.verb + "' needs a target");
  const detail::ResolvedTarget tgt = detail::resolve_target(rc);
  rep.set = tgt.params;
  const Kernel kernel = detail::kernel_from_name(rc.kernel);

  const double coef = tgt.poly2d ? scalar_param(tgt.params, "coef") : 0.0;
  const double powr = tgt.poly2d ? scalar_param(tgt.params, "pow") : 0.0;
  const int dim = tgt.poly2d ? 2 : tgt.cfg.dim;
  if (rc.i0 < 0 || rc.i0 >= dim) fail(errc::invalid_argument, "pivot index out of range");
  rep.digest = tgt.poly2d
                   ? detail::hex16(detail::fnv1a("poly2d;" + detail::num17(coef) + ";" +
                                                 detail::num17(powr)))
                   : config_digest(tgt.cfg);

  std::vector<std::string> checks = rc.checks;
  if (rc.verb == "identity") checks = {"identity"};
  if (rc.verb == "restrict") checks = {"restrict"};
  if (rc.verb == "scan") checks = {"scan"};
  if (checks.empty())
    checks = tgt.poly2d ? std::vector<std::string>{"wdvv", "identity"}
                        : std::vector<std::string>{"vee", "condition2", "commute"};
  for (const auto& name : checks) {
    const auto& known = detail::known_checks();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      std::string all;
      for (const auto& k : known) all += (all.empty() ? "" : ", ") + k;
      fail(errc::invalid_argument, "unknown check '" + name + "'; valid checks: " + all);
    }
  }
  auto requested = [&checks](const char* name) {
    return std::find(checks.begin(), checks.end(), name) != checks.end();
  };

  // One shared sample set drives every pointwise check.
  const bool needs_samples = requested("commute") || requested("wdvv") || requested("identity");
  std::vector<PointSample> pts;
  if (needs_samples)
    pts = tgt.poly2d ? detail::poly2d_points(rc.points, rc.seed)
                     : sample_points(tgt.cfg, kernel, rc.points, rc.seed);
  rep.sample_count = static_cast<int>(pts.size());
  rep.min_clearance = pts.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& p : pts) rep.min_clearance = std::min(rep.min_clearance, p.clearance);

  std::vector<DerivativeTensor> tensors;
  for (const auto& p : pts)
    tensors.push_back(tgt.poly2d ? DerivativeTensor{2, poly2d_tensor(p.x, coef, powr), p.x}
                                 : third_derivative_tensor(tgt.cfg, kernel, p.x));

  if (!tgt.poly2d) {
    rep.c_flags = c_hypothesis(tgt.cfg);
    const Eigen::MatrixXcd g = gram_operator(tgt.cfg);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
    const auto& sv = svd.singularValues();
    rep.g_nondegenerate = sv(sv.size() - 1) > tol::metric_rel * sv(0) ? 1 : 0;
    if (!tensors.empty() && dim > 1) {
      Eigen::MatrixXcd p(dim - 1, dim);
      int row = 0;
      for (int i = 0; i < dim; ++i) {
        if (i == rc.i0) continue;
        p.row(row++) = tensors[0].f[static_cast<size_t>(rc.i0)].row(i);
      }
      Eigen::JacobiSVD<Eigen::MatrixXcd> psvd(p);
      const auto& ps = psvd.singularValues();
      rep.rank_p = 0;
      for (long i = 0; i < ps.size(); ++i)
        if (ps(i) > tol::rank_rel * ps(0)) ++rep.rank_p;
    } else if (!tensors.empty()) {
      rep.rank_p = 0;  // the pivot slice minus its pivot row is empty in dimension one
    }
  }

  auto need_config = [&](const char* name) {
    if (tgt.poly2d)
      fail(errc::invalid_argument, std::string("check '") + name +
                                       "' needs a covector configuration, not the polynomial "
                                       "family");
  };

  for (const auto& name : checks) {
    if (name == "vee") {
      need_config("vee");
      const VeeReport vr = kernel.tag == Kernel::Tag::trig
                               ? trig_vee_residual(tgt.cfg, rc.tol)
                               : euclidean_vee_residual(tgt.cfg, rc.tol);
      rep.checks.push_back({"vee", vr.max_residual, rc.tol, vr.verdict});
    } else if (name == "condition2") {
      need_config("condition2");
      const double r = condition2_residual(tgt.cfg);
      rep.checks.push_back({"condition2", r, rc.tol, r < rc.tol});
    } else if (name == "commute") {
      double worst = 0.0;
      for (const auto& t : tensors) worst = std::max(worst, commutativity_residual(t));
      rep.checks.push_back({"commute", worst, rc.tol, worst < rc.tol});
    } else if (name == "wdvv") {
      double worst = 0.0;
      for (const auto& t : tensors)
        worst = std::max(worst, wdvv_residual(t, t.f[static_cast<size_t>(rc.i0)]));
      rep.checks.push_back({"wdvv", worst, rc.tol, worst < rc.tol});
    } else if (name == "identity") {
      if (tgt.poly2d) {
        Eigen::MatrixXcd g(2, 2);
        g << cd(0), cd(1), cd(1), cd(0);
        double worst = 0.0;
        Eigen::VectorXcd e;
        for (const auto& t : tensors) {
          const MetricIdentity mi = identity_for_metric(t, g, rc.i0);
          worst = std::max(worst, mi.residual);
          e = mi.e;
        }
        rep.checks.push_back({"identity_metric", worst, rc.tol, worst < rc.tol});
        ordered_json je = ordered_json::object();
        je["e_re"] = std::vector<double>{e(0).real(), e(1).real()};
        je["e_im"] = std::vector<double>{e(0).imag(), e(1).imag()};
        rep.extra["identity"] = je;
        continue;
      }
      std::vector<std::string> routes = rc.compare.empty()
                                            ? std::vector<std::string>{"minors"}
                                            : rc.compare;
      for (const auto& r : routes)
        if (r != "minors" && r != "closed")
          fail(errc::invalid_argument, "unknown identity route '" + r +
                                           "'; valid routes: minors, closed");
      const bool want_minors =
          std::find(routes.begin(), routes.end(), "minors") != routes.end();
      const bool want_closed =
          std::find(routes.begin(), routes.end(), "closed") != routes.end();
      std::vector<Eigen::VectorXcd> e_minors, e_closed;
      if (want_minors) {
        double worst = 0.0;
        for (const auto& t : tensors) {
          const IdentityField f = minor_identity_field(t, rc.i0);
          worst = std::max(worst, identity_residual(t, f.e));
          e_minors.push_back(f.e);
        }
        rep.checks.push_back({"identity_minors", worst, rc.tol, worst < rc.tol});
      }
      if (want_closed) {
        if (tgt.from_file)
          fail(errc::invalid_argument,
               "the closed-form identity route needs a catalog family, not a file");
        const ClosedFormCase cf = closed_form_case(tgt.name, tgt.params);
        double worst = 0.0;
        for (size_t i = 0; i < tensors.size(); ++i) {
          const ClosedFormSample s = closed_form_identity(cf, pts[i].x);
          worst = std::max(worst, identity_residual(tensors[i], s.e));
          e_closed.push_back(s.e);
        }
        rep.checks.push_back({"identity_closed", worst, rc.tol, worst < rc.tol});
        rep.extra["closed_form_case"] = cf.case_id;
      }
      if (want_minors && want_closed) {
        double worst = 0.0;
        for (size_t i = 0; i < e_minors.size(); ++i) {
          const double scale = 1.0 + e_minors[i].cwiseAbs().maxCoeff();
          worst = std::max(worst, (e_minors[i] - e_closed[i]).cwiseAbs().maxCoeff() / scale);
        }
        rep.checks.push_back({"identity_compare", worst, rc.tol, worst < rc.tol});
      }
    } else if (name == "restrict") {
      need_config("restrict");
      if (rc.along.empty())
        fail(errc::invalid_argument, "provide --along with subsystem member indices");
      const RestrictedCommutativity res =
          restricted_commutativity(tgt.cfg, rc.along, rc.points, rc.seed, kernel);
      rep.checks.push_back({"restrict", res.residual, rc.tol, res.residual < rc.tol});
      for (const auto& f : res.flags) rep.c_flags.push_back(f);
      ordered_json jr = ordered_json::object();
      jr["ambient_dim"] = res.frame.ambient_dim;
      jr["projected_dim"] = res.frame.n();
      jr["projected_size"] = res.frame.projected.size();
      jr["excluded"] = res.frame.excluded;
      jr["exact"] = res.frame.exact;
      jr["min_abs_c"] = res.min_abs_c;
      rep.extra["restrict"] = jr;
    } else if (name == "scan") {
      if (tgt.poly2d || tgt.from_file)
        fail(errc::invalid_argument, "scan needs a parametric catalog family");
      if (rc.free_name.empty() || !rc.has_range)
        fail(errc::invalid_argument, "provide --free and --range for a scan");
      Params fixed = tgt.params;
      fixed.erase(rc.free_name);
      const RelationScan scan =
          relation_scan(tgt.name, fixed, rc.free_name, rc.lo, rc.hi, rc.grid);
      double worst = 0.0;
      for (double root : scan.roots) {
        Params p = fixed;
        p[rc.free_name] = {root};
        worst = std::max(worst, condition2_residual(build_named(tgt.name, p)));
      }
      rep.checks.push_back({"scan", worst, rc.tol, !scan.roots.empty() && worst < rc.tol});
      ordered_json js = ordered_json::object();
      js["free"] = rc.free_name;
      js["lo"] = scan.lo;
      js["hi"] = scan.hi;
      js["cells"] = static_cast<int>(scan.grid.size()) - 1;
      js["roots"] = scan.roots;
      ordered_json brackets = ordered_json::array();
      for (const auto& b : scan.brackets) brackets.push_back(std::vector<double>{b[0], b[1]});
      js["brackets"] = brackets;
      rep.extra["scan"] = js;
    }
  }
  return rep;
}

// --------------------------------------------------------------------------
// serialization
// --------------------------------------------------------------------------

inline ordered_json to_json(const CheckReport& rep) {
  ordered_json j;
  j["schema"] = 1;
  j["verb"] = rep.verb;
  j["target"] = rep.target;
  j["digest"] = rep.digest;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : rep.set) params[k] = v;
  j["parameters"] = params;
  j["kernel"] = rep.kernel;
  j["points"] = rep.points;
  j["seed"] = rep.seed;
  j["tol"] = rep.tol;
  ordered_json sample = ordered_json::object();
  sample["count"] = rep.sample_count;
  sample["min_clearance"] = rep.min_clearance;
  j["sample"] = sample;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json row;
    row["name"] = c.name;
    row["residual"] = c.residual;
    row["tol"] = c.tol;
    row["pass"] = c.pass;
    checks.push_back(row);
  }
  j["checks"] = checks;
  ordered_json hyp = ordered_json::object();
  ordered_json flags = ordered_json::array();
  for (const auto& f : rep.c_flags) {
    ordered_json row;
    row["rep"] = f.rep;
    row["subset"] = f.subset;
    row["re"] = f.value.real();
    row["im"] = f.value.imag();
    flags.push_back(row);
  }
  hyp["c_delta_flags"] = flags;
  hyp["rank_P"] = rep.rank_p < 0 ? ordered_json(nullptr) : ordered_json(rep.rank_p);
  hyp["G_nondegenerate"] =
      rep.g_nondegenerate < 0 ? ordered_json(nullptr) : ordered_json(rep.g_nondegenerate == 1);
  j["hypothesis"] = hyp;
  j["extra"] = rep.extra;
  j["pass"] = rep.pass();
  j["warnings"] = rep.warnings();
  return j;
}

inline CheckReport report_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("schema") || j["schema"].get<int>() != 1)
    fail(errc::parse_error, "report schema must be 1");
  CheckReport rep;
  rep.verb = j["verb"].get<std::string>();
  rep.target = j["target"].get<std::string>();
  rep.digest = j["digest"].get<std::string>();
  for (const auto& [k, v] : j["parameters"].items()) rep.set[k] = v.get<std::vector<double>>();
  rep.kernel = j["kernel"].get<std::string>();
  rep.points = j["points"].get<int>();
  rep.seed = j["seed"].get<std::uint64_t>();
  rep.tol = j["tol"].get<double>();
  rep.sample_count = j["sample"]["count"].get<int>();
  rep.min_clearance = j["sample"]["min_clearance"].get<double>();
  for (const auto& row : j["checks"])
    rep.checks.push_back({row["name"].get<std::string>(), row["residual"].get<double>(),
                          row["tol"].get<double>(), row["pass"].get<bool>()});
  for (const auto& row : j["hypothesis"]["c_delta_flags"]) {
    CHypothesisFlag f;
    f.rep = row["rep"].get<int>();
    f.subset = row["subset"].get<std::vector<int>>();
    f.value = cd(row["re"].get<double>(), row["im"].get<double>());
    rep.c_flags.push_back(std::move(f));
  }
  rep.rank_p = j["hypothesis"]["rank_P"].is_null() ? -1 : j["hypothesis"]["rank_P"].get<int>();
  rep.g_nondegenerate = j["hypothesis"]["G_nondegenerate"].is_null()
                            ? -1
                            : (j["hypothesis"]["G_nondegenerate"].get<bool>() ? 1 : 0);
  rep.extra = j["extra"];
  return rep;
}

inline std::string render_human(const CheckReport& rep) {
  std::ostringstream os;
  if (rep.verb == "catalog") {
    for (const auto& row : rep.extra["entries"]) {
      os << row["name"].get<std::string>();
      if (row["dim"].get<int>() > 0) os << "  (dim " << row["dim"].get<int>() << ")";
      os << "\n  parameters: " << row["parameters"].get<std::string>()
         << "\n  relations:  " << row["relations"].get<std::string>() << "\n";
    }
    return os.str();
  }
  os << rep.verb << " " << rep.target << "  (digest " << rep.digest << ")\n";
  if (!rep.set.empty()) {
    os << "parameters:";
    for (const auto& [k, v] : rep.set) {
      os << " " << k << "=";
      for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    }
    os << "\n";
  }
  os << "kernel " << rep.kernel << ", points " << rep.points << ", seed " << rep.seed << ", tol "
     << rep.tol << "\n";
  char buf[160];
  for (const auto& c : rep.checks) {
    std::snprintf(buf, sizeof buf, "  %-18s residual %-12.4g %s\n", c.name.c_str(), c.residual,
                  c.pass ? "PASS" : "FAIL");
    os << buf;
  }
  if (rep.rank_p >= 0) os << "pivot slice rank " << rep.rank_p << "\n";
  if (rep.g_nondegenerate >= 0)
    os << "G " << (rep.g_nondegenerate == 1 ? "nondegenerate" : "DEGENERATE") << "\n";
  for (const auto& f : rep.c_flags) {
    os << "warning: C_delta near zero (class rep " << f.rep << ", subset";
    for (int m : f.subset) os << " " << m;
    os << ", value " << f.value.real() << (f.value.imag() < 0 ? "-" : "+")
       << std::abs(f.value.imag()) << "i)\n";
  }
  if (rep.extra.contains("scan")) {
    os << "roots:";
    for (const auto& r : rep.extra["scan"]["roots"]) os << " " << r.get<double>();
    os << "\n";
  }
  if (rep.extra.contains("restrict"))
    os << "projected dim " << rep.extra["restrict"]["projected_dim"].get<int>() << ", "
       << rep.extra["restrict"]["projected_size"].get<int>() << " vectors\n";
  os << "overall " << (rep.pass() ? (rep.warnings() ? "PASS (warnings)" : "PASS") : "FAIL")
     << "\n";
  return os.str();
}

}  // namespace veelab::cli
