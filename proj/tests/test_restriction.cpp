#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <veelab/catalog.hpp>
#include <veelab/identity.hpp>
#include <veelab/prepotential.hpp>
#include <veelab/restriction.hpp>

using namespace veelab;

namespace {

ExactVector exv(std::initializer_list<long> comps) {
  ExactVector v;
  for (long c : comps) v.push_back(detail::rat(c));
  return v;
}

ExactVector half(std::initializer_list<long> numerators) {
  ExactVector v;
  for (long c : numerators) v.push_back(detail::rat(c, 2));
  return v;
}

}  // namespace

TEST_CASE("subsystem collects exactly the vectors inside the span") {
  const VectorConfig f4 = build_f4(0.75, -0.3125);

  CHECK(subsystem(f4, std::vector<ExactVector>{exv({0, 0, 1, -1})}).size() == 1);
  CHECK(subsystem(f4, std::vector<ExactVector>{exv({0, 0, 0, 1})}).size() == 1);
  CHECK(subsystem(f4, std::vector<ExactVector>{exv({0, 1, -1, 0}), exv({0, 0, 1, -1})}).size() == 3);
  CHECK(subsystem(f4, std::vector<ExactVector>{exv({0, 1, -1, 0}), exv({0, 0, 0, 1})}).size() == 2);
  CHECK(subsystem(f4, std::vector<ExactVector>{exv({0, 0, 1, 0}), exv({0, 0, 0, 1})}).size() == 4);
  CHECK(subsystem(f4, std::vector<ExactVector>{exv({0, 0, 0, 1}), half({1, -1, -1, -1})}).size() == 3);

  const std::vector<ExactVector> full = {exv({1, 0, 0, 0}), exv({0, 1, 0, 0}), exv({0, 0, 1, 0}),
                                         exv({0, 0, 0, 1})};
  CHECK(subsystem(f4, full).size() == f4.size());

  // No double-family vector lies on the line through (1, 2).
  const VectorConfig bc2 = build_bcn(0.5, 0.75, 0.25, {1.0, 1.0});
  CHECK(subsystem(bc2, std::vector<ExactVector>{exv({1, 2})}).empty());

  CHECK_THROWS_AS(subsystem(f4, std::vector<ExactVector>{}), error);
  CHECK_THROWS_AS(subsystem(f4, std::vector<ExactVector>{exv({1, 0})}), error);
}

TEST_CASE("restricting along the empty subsystem changes nothing") {
  const VectorConfig f4 = build_f4(0.75, -0.3125);
  const RestrictionFrame fr = restrict(f4, std::vector<int>{});
  REQUIRE(fr.n() == 4);
  CHECK(fr.exact);
  CHECK(fr.excluded.empty());
  REQUIRE(fr.projected.size() == f4.size());
  for (int i = 0; i < f4.size(); ++i)
    CHECK((fr.projected.vecs[static_cast<size_t>(i)] - f4.vecs[static_cast<size_t>(i)]).norm() ==
          0.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(fr.frame[static_cast<size_t>(i)](i) == cd(1.0));
    CHECK(fr.frame[static_cast<size_t>(i)].norm() == 1.0);
  }
}

TEST_CASE("restriction frames are bilinear-orthonormal") {
  const VectorConfig f4 = build_f4(0.75, -0.3125);

  SECTION("exact frame when every normalization stays in the field") {
    const RestrictionFrame fr =
        restrict(f4, std::vector<ExactVector>{exv({0, 0, 0, 1}), half({1, -1, -1, -1})});
    REQUIRE(fr.exact);
    REQUIRE(fr.n() == 2);
    for (int i = 0; i < fr.n(); ++i)
      for (int j = 0; j < fr.n(); ++j) {
        const ExactScalar ip =
            inner_exact(fr.eframe[static_cast<size_t>(i)], fr.eframe[static_cast<size_t>(j)]);
        if (i == j)
          CHECK((ip - ExactScalar(1)).is_zero());
        else
          CHECK(ip.is_zero());
      }
  }

  SECTION("frame coordinates invert the ambient embedding") {
    const RestrictionFrame fr = restrict(f4, std::vector<ExactVector>{exv({0, 0, 1, -1})});
    REQUIRE(fr.n() == 3);
    Eigen::VectorXcd xi(3);
    xi << cd(0.3, 0.1), cd(-0.7, 0.4), cd(0.2, -0.9);
    CHECK((fr.coords(fr.ambient(xi)) - xi).norm() < 1e-14);
    // Ambient points satisfy the wall equations.
    const Eigen::VectorXcd x = fr.ambient(xi);
    CHECK(std::abs(x(2) - x(3)) < 1e-14);
  }

  SECTION("normalization off the field downgrades to a numeric frame") {
    const VectorConfig cfg = build_exact_config(
        2, {exv({2, 1}), exv({1, 0}), exv({0, 1})}, {cd(1.0), cd(1.0), cd(1.0)});
    const auto b = subsystem(cfg, std::vector<ExactVector>{exv({2, 1})});
    REQUIRE(b == std::vector<int>{0});
    const RestrictionFrame fr = restrict(cfg, b);
    CHECK_FALSE(fr.exact);
    REQUIRE(fr.n() == 1);
    const Eigen::VectorXcd& f = fr.frame[0];
    CHECK(std::abs(inner(f, f) - cd(1.0)) < 1e-14);
    CHECK(std::abs(2.0 * f(0) + f(1)) < 1e-14);
    REQUIRE(fr.projected.size() == 2);
    CHECK(std::abs(std::abs(fr.projected.vecs[0](0)) - 1.0 / std::sqrt(5.0)) < 1e-14);
    CHECK(std::abs(std::abs(fr.projected.vecs[1](0)) - 2.0 / std::sqrt(5.0)) < 1e-14);
  }

  SECTION("isotropic complement is rejected") {
    std::vector<Eigen::VectorXcd> vs;
    Eigen::VectorXcd a(2), b(2);
    a << cd(1.0), cd(0.0, 1.0);
    b << cd(1.0), cd(0.0);
    vs = {a, b};
    const VectorConfig cfg = build_numeric_config(2, vs, {cd(1.0), cd(1.0)});
    try {
      restrict(cfg, std::vector<int>{0});
      FAIL("expected IsotropicComplement");
    } catch (const error& e) {
      CHECK(e.code() == errc::isotropic_complement);
    }
  }
}

TEST_CASE("wall projections of the 24-vector system reproduce the catalog tables") {
  const double r = 0.75, q = -0.3125;
  const VectorConfig f4 = build_f4(r, q);

  SECTION("one short mirror") {
    const RestrictionFrame fr = restrict(f4, std::vector<ExactVector>{exv({0, 0, 0, 1})});
    CHECK(fr.excluded.size() == 1);
    REQUIRE(fr.projected.size() == 13);
    CHECK(gram_signature(fr.projected) == gram_signature(build_f4_a1_1(r, q)));
  }
  SECTION("one long mirror") {
    const RestrictionFrame fr = restrict(f4, std::vector<ExactVector>{exv({0, 0, 1, -1})});
    CHECK(fr.excluded.size() == 1);
    REQUIRE(fr.projected.size() == 16);
    CHECK(gram_signature(fr.projected) == gram_signature(build_f4_a1_2(r, q)));
  }
  SECTION("long triple") {
    const RestrictionFrame fr =
        restrict(f4, std::vector<ExactVector>{exv({0, 1, -1, 0}), exv({0, 0, 1, -1})});
    CHECK(fr.excluded.size() == 3);
    REQUIRE(fr.projected.size() == 9);
    CHECK(gram_signature(fr.projected) == gram_signature(build_f4_a2_1(r, q)));
  }
  SECTION("orthogonal mirror pair") {
    const RestrictionFrame fr =
        restrict(f4, std::vector<ExactVector>{exv({0, 1, -1, 0}), exv({0, 0, 0, 1})});
    CHECK(fr.excluded.size() == 2);
    REQUIRE(fr.projected.size() == 8);
    CHECK(gram_signature(fr.projected) == gram_signature(build_f4_a1sq(r, q)));
  }
  SECTION("signatures separate the non-equivalent walls") {
    CHECK_FALSE(gram_signature(build_f4_a1_1(r, q)) == gram_signature(build_f4_a1_2(r, q)));
    CHECK_FALSE(gram_signature(build_f4_a1sq(r, q)) ==
                gram_signature(build_f4_a1sq(r, q), 2.0));
  }
}

TEST_CASE("short triple wall is the hexagonal system up to scale") {
  const double r = 0.75, q = -0.3125;
  const VectorConfig f4 = build_f4(r, q);
  const RestrictionFrame fr =
      restrict(f4, std::vector<ExactVector>{exv({0, 0, 0, 1}), half({1, -1, -1, -1})});
  CHECK(fr.excluded.size() == 3);
  REQUIRE(fr.projected.size() == 6);
  // Projected lengths are 1/sqrt(3/2) of the hexagonal normalization, the
  // short multiplicity becomes 3(r + q) and the long one stays q.
  CHECK(gram_signature(fr.projected, 1.5) == gram_signature(build_g2(3 * (r + q), q)));
}

TEST_CASE("rank-2 wall of the 24-vector system is a deformed double system") {
  const double r = 0.75, q = -0.3125;
  const VectorConfig f4 = build_f4(r, q);
  const RestrictionFrame fr =
      restrict(f4, std::vector<ExactVector>{exv({0, 0, 1, 0}), exv({0, 0, 0, 1})});
  CHECK(fr.excluded.size() == 4);
  REQUIRE(fr.projected.size() == 6);
  CHECK(gram_signature(fr.projected, 2.0) ==
        gram_signature(build_bcn(r + 4 * q, 4 * r, q, {1.0, 1.0})));
}

TEST_CASE("double-system walls merge the weights") {
  const double q = 0.5, r = 0.75, s = 0.25;
  const VectorConfig bc4 = build_bcn(q, r, s, {1.0, 1.0, 1.0, 1.0});

  const RestrictionFrame one = restrict(bc4, std::vector<ExactVector>{exv({1, -1, 0, 0})});
  CHECK(one.exact);
  REQUIRE(one.projected.size() == build_bcn(q, r, s, {2.0, 1.0, 1.0}).size());
  CHECK(gram_signature(one.projected) == gram_signature(build_bcn(q, r, s, {2.0, 1.0, 1.0})));

  const RestrictionFrame two =
      restrict(bc4, std::vector<ExactVector>{exv({1, -1, 0, 0}), exv({0, 0, 1, -1})});
  CHECK(gram_signature(two.projected) == gram_signature(build_bcn(q, r, s, {2.0, 2.0})));
}

TEST_CASE("restricted solutions keep commuting at the walls") {
  SECTION("deformed double family, one and two mirrors") {
    const VectorConfig bc4 = build_bcn(1.0, -12.0, 1.0, {1.0, 1.0, 1.0, 1.0});
    const auto one = restricted_commutativity(bc4, subsystem(bc4, {exv({1, -1, 0, 0})}), 6, 11);
    CHECK(one.residual < 1e-7);
    CHECK(one.flags.empty());
    CHECK(one.min_abs_c > 0.1);
    const auto two = restricted_commutativity(
        bc4, subsystem(bc4, {exv({1, -1, 0, 0}), exv({0, 0, 1, -1})}), 6, 12);
    CHECK(two.residual < 1e-7);
  }
  SECTION("24-vector family, one and two mirrors") {
    const VectorConfig f4 = build_f4(-2.0, 1.0);
    const auto one = restricted_commutativity(f4, subsystem(f4, {exv({0, 0, 0, 1})}), 6, 13);
    CHECK(one.residual < 1e-7);
    const auto two = restricted_commutativity(
        f4, subsystem(f4, {exv({0, 1, -1, 0}), exv({0, 0, 0, 1})}), 6, 14);
    CHECK(two.residual < 1e-7);
  }
  SECTION("walls of a non-solution do not commute") {
    const VectorConfig f4 = build_f4(1.0, 1.0);
    const auto one = restricted_commutativity(f4, subsystem(f4, {exv({0, 0, 0, 1})}), 6, 15);
    CHECK(one.residual > 1e-3);
  }
}

TEST_CASE("vanishing collinearity sums on the subsystem are certified") {
  std::vector<Eigen::VectorXcd> vs;
  Eigen::VectorXcd a(2), b(2), c(2);
  a << cd(1.0), cd(0.0);
  b << cd(2.0), cd(0.0);
  c << cd(0.0), cd(1.0);
  vs = {a, b, c};
  // C over the pair is 1*1 + (-1/4)*4 = 0.
  const VectorConfig cfg = build_numeric_config(2, vs, {cd(1.0), cd(-0.25), cd(1.0)});
  const auto res = restricted_commutativity(cfg, std::vector<int>{0}, 4, 5);
  CHECK(res.frame.excluded == std::vector<int>{0, 1});
  CHECK(res.min_abs_c <= 1e-15);
  REQUIRE(res.flags.size() == 1);
  CHECK(res.flags[0].subset == std::vector<int>{0, 1});
  CHECK(res.residual < 1e-12);  // one-dimensional wall commutes trivially
}

TEST_CASE("identity fields stay tangent to the walls of their own system") {
  SECTION("deformed double family") {
    const Params params = {{"q", {1.0}}, {"r", {-10.0}}, {"s", {1.0}}, {"m", {1.0, 1.0, 1.0}}};
    const ClosedFormCase cf = closed_form_case("BCn", params);
    const RestrictionFrame fr = restrict(cf.cfg, subsystem(cf.cfg, {exv({1, -1, 0})}));
    const TangencyReport rep = tangency_check(cf, fr, 6, 21);
    CHECK(rep.tangent);
    CHECK(rep.max_normal < 1e-9);
  }
  SECTION("24-vector family, one and two mirrors") {
    const Params params = {{"r", {-2.0}}, {"q", {1.0}}};
    const ClosedFormCase cf = closed_form_case("F4+", params);
    const RestrictionFrame one = restrict(cf.cfg, subsystem(cf.cfg, {exv({0, 0, 0, 1})}));
    CHECK(tangency_check(cf, one, 6, 22).tangent);
    const RestrictionFrame two =
        restrict(cf.cfg, subsystem(cf.cfg, {exv({0, 1, -1, 0}), exv({0, 0, 0, 1})}));
    CHECK(tangency_check(cf, two, 6, 23).tangent);
  }
  SECTION("a generic line is not tangent") {
    const Params params = {{"q", {1.0}}, {"r", {-8.0}}, {"s", {1.0}}, {"m", {1.0, 1.0}}};
    const ClosedFormCase cf = closed_form_case("BCn", params);
    RestrictionFrame fr;
    fr.ambient_dim = 2;
    Eigen::VectorXcd f(2);
    f << cd(2.0), cd(-1.0);
    fr.frame = {f / std::sqrt(5.0)};
    Eigen::VectorXcd gen1(1);
    gen1 << cd(1.0);
    fr.projected = build_numeric_config(1, {gen1}, {cd(1.0)});
    const TangencyReport rep = tangency_check(cf, fr, 6, 24);
    CHECK_FALSE(rep.tangent);
    CHECK(rep.max_normal > 1e-3);
  }
  SECTION("dimension mismatch is rejected") {
    const Params params = {{"r", {-2.0}}, {"q", {1.0}}};
    const ClosedFormCase cf = closed_form_case("F4+", params);
    RestrictionFrame fr;
    fr.ambient_dim = 2;
    CHECK_THROWS_AS(tangency_check(cf, fr), error);
  }
}

TEST_CASE("wall tensors of a solution admit the minor identity") {
  const VectorConfig bc4 = build_bcn(1.0, -12.0, 1.0, {1.0, 1.0, 1.0, 1.0});
  const RestrictionFrame fr = restrict(bc4, subsystem(bc4, {exv({1, -1, 0, 0})}));
  const Kernel k = Kernel::trig();
  for (const auto& p : sample_points(fr.projected, k, 3, 31)) {
    const DerivativeTensor t = third_derivative_tensor(fr.projected, k, p.x);
    const IdentityField f = minor_identity_field(t);
    CHECK(identity_residual(t, f.e) < 1e-8);
  }
}
