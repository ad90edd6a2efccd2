#include <catch2/catch_amalgamated.hpp>

#include "veelab/config.hpp"

using namespace veelab;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::VectorXcd nvec(std::initializer_list<double> comps) {
  Eigen::VectorXcd v(static_cast<long>(comps.size()));
  long i = 0;
  for (double c : comps) v[i++] = cd(c, 0.0);
  return v;
}

ExactVector evec(std::initializer_list<long> comps) {
  ExactVector v;
  for (long c : comps) v.emplace_back(c);
  return v;
}

// B2 positive system {e1, e2, e1-e2, e1+e2} with short mult r, long mult q.
VectorConfig b2_exact(double r, double q) {
  std::vector<ExactVector> vs = {evec({1, 0}), evec({0, 1}), evec({1, -1}), evec({1, 1})};
  return build_exact_config(2, vs, {cd(r, 0), cd(r, 0), cd(q, 0), cd(q, 0)});
}

}  // namespace

TEST_CASE("bilinear pairing is not Hermitian") {
  Eigen::VectorXcd v(2);
  v << cd(0, 1), cd(0, 0);
  CHECK(inner(v, v) == cd(-1.0, 0.0));  // (i,0).(i,0) = i^2
}

TEST_CASE("wedge matrix expansion") {
  auto u = nvec({1, 1});
  auto v = nvec({1, -1});
  Eigen::MatrixXcd w = wedge_matrix(u, v);
  CHECK(w(0, 0) == cd(0, 0));
  CHECK(w(1, 1) == cd(0, 0));
  CHECK(w(0, 1) == cd(-2.0, 0.0));  // (e1+e2) wedge (e1-e2), entry (1,2)
  CHECK(w(1, 0) == cd(2.0, 0.0));
}

TEST_CASE("build_config validation") {
  CHECK_THROWS_MATCHES(build_numeric_config(2, {nvec({1, 0, 0})}, {cd(1, 0)}), error,
                       Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("DimensionMismatch")));
  CHECK_THROWS_MATCHES(build_numeric_config(2, {nvec({1, 0}), nvec({0, 0})}, {cd(1, 0), cd(1, 0)}), error,
                       Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("ZeroVector")));
  CHECK_THROWS_MATCHES(build_numeric_config(2, {nvec({1, 0})}, {}), error,
                       Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("DimensionMismatch")));
  std::vector<std::vector<ScalarLit>> mixed = {{ScalarLit(1.0), ScalarLit(ExactScalar(1))}};
  CHECK_THROWS_MATCHES(build_config(2, mixed, {cd(1, 0)}), error,
                       Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("MixedScalarMode")));
}

TEST_CASE("collinear classes of BC1") {
  // {e1, 2e1} with mults {r, s}: one class, ratios (1,2), C = r + 4s
  std::vector<ExactVector> vs = {evec({1}), evec({2})};
  auto cfg = build_exact_config(1, vs, {cd(0.75, 0), cd(0.5, 0)});
  auto classes = collinear_classes(cfg);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].rep == 0);
  CHECK(classes[0].members == std::vector<int>{0, 1});
  CHECK(classes[0].ratios[0] == cd(1, 0));
  CHECK(classes[0].ratios[1] == cd(2, 0));
  CHECK_THAT(classes[0].c_value.real(), WithinAbs(0.75 + 4 * 0.5, 0.0));
  CHECK(classes[0].c_value.imag() == 0.0);
}

TEST_CASE("collinear classes numeric and exact agree on B2") {
  auto cfg = b2_exact(0.75, 0.25);
  VectorConfig ncfg = build_numeric_config(2, cfg.vecs, cfg.mults);
  auto ce = collinear_classes(cfg);
  auto cn = collinear_classes(ncfg);
  REQUIRE(ce.size() == 4);
  REQUIRE(cn.size() == 4);
  for (size_t i = 0; i < 4; ++i) CHECK(ce[i].members == cn[i].members);
}

TEST_CASE("positive_normalize flips, merges and drops") {
  // -e2 flips onto e2 and merges; order keeps first occurrences
  auto cfg = build_numeric_config(2, {nvec({0, -1}), nvec({0, 1}), nvec({1, 0})}, {cd(1, 0), cd(2, 0), cd(5, 0)});
  auto norm = positive_normalize(cfg);
  REQUIRE(norm.size() == 2);
  CHECK(norm.vecs[0] == nvec({0, 1}));
  CHECK(norm.mults[0] == cd(3, 0));
  CHECK(norm.vecs[1] == nvec({1, 0}));
  CHECK(norm.mults[1] == cd(5, 0));

  // merging keeps multiplicities additive; exact-zero merged mult is dropped
  auto doubled = build_numeric_config(2, {nvec({1, 0}), nvec({-1, 0})}, {cd(1, 0), cd(1, 0)});
  auto dnorm = positive_normalize(doubled);
  REQUIRE(dnorm.size() == 1);
  CHECK(dnorm.mults[0] == cd(2, 0));
  auto cancel = build_numeric_config(2, {nvec({1, 0}), nvec({-1, 0})}, {cd(1, 0), cd(-1, 0)});
  CHECK(positive_normalize(cancel).size() == 0);

  // idempotence
  auto once = positive_normalize(positive_normalize(cfg));
  CHECK(once.size() == norm.size());
  for (int i = 0; i < norm.size(); ++i) {
    CHECK(once.vecs[i] == norm.vecs[i]);
    CHECK(once.mults[i] == norm.mults[i]);
  }

  // exact mode: flip decided by exact sign of the first nonzero coordinate
  std::vector<ExactVector> vs = {{ExactScalar(0) - ExactScalar::sqrt2(), ExactScalar(1)}};
  auto ecfg = build_exact_config(2, vs, {cd(1, 0)});
  auto enorm = positive_normalize(ecfg);
  CHECK(enorm.evecs[0][0] == ExactScalar::sqrt2());
  CHECK(enorm.evecs[0][1] == ExactScalar(-1));
}

TEST_CASE("gram operator of B2 is (r+2q) I") {
  auto cfg = b2_exact(0.75, 0.25);
  Eigen::MatrixXcd m = gram_operator(cfg);
  CHECK_THAT(m(0, 0).real(), WithinAbs(1.25, 0.0));
  CHECK_THAT(m(1, 1).real(), WithinAbs(1.25, 0.0));
  CHECK(m(0, 1) == cd(0, 0));
  CHECK(m(1, 0) == cd(0, 0));

  // g_pairing matches x^T M y
  Eigen::VectorXcd x = nvec({0.3, -0.7}), y = nvec({1.1, 0.4});
  cd direct = g_pairing(cfg, x, y);
  cd via_m = (x.transpose() * m * y)(0, 0);
  CHECK_THAT(std::abs(direct - via_m), WithinAbs(0.0, 1e-15));

  // exact gram operator agrees
  auto me = gram_operator_exact(cfg);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK_THAT(std::abs(me[i][j].to_complex() - m(i, j)), WithinAbs(0.0, 1e-15));
}
