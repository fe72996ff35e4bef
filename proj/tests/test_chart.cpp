#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <jetorbit/chart.hpp>
#include <jetorbit/jet_action.hpp>
#include <jetorbit/rng.hpp>

using namespace jetorbit;

namespace {

SquareMat<double> random_invertible(int n, Rng& rng) {
  SquareMat<double> a(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = (i == j ? 1.0 : 0.0) + rng.uniform(-0.3, 0.3);
  return a;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

const StructureGroupSpec kAllSpecs[] = {
    {Family::orthogonal, 2}, {Family::conformal, 2},
    {Family::trivial, 2},    {Family::scalars, 2},
    {Family::orthogonal, 3}, {Family::conformal, 3},
    {Family::trivial, 3},    {Family::scalars, 3},
};

}  // namespace

TEST_CASE("family tokens round-trip") {
  for (Family f : {Family::orthogonal, Family::conformal, Family::trivial,
                   Family::scalars}) {
    CHECK(family_from_token(family_token(f)) == f);
    CHECK(!family_name(f).empty());
  }
  CHECK(family_token(Family::orthogonal) == "on");
  CHECK(family_token(Family::conformal) == "co");
  CHECK(family_token(Family::trivial) == "id");
  CHECK(family_token(Family::scalars) == "scalar");
  CHECK_THROWS_AS(family_from_token("euclidean"), std::invalid_argument);
}

TEST_CASE("structure group dimensions") {
  const StructureGroupSpec on3{Family::orthogonal, 3};
  CHECK(on3.group_dim() == 3);
  CHECK(on3.chart_dim() == 6);
  CHECK(on3.ambient_dim() == 6);

  const StructureGroupSpec co3{Family::conformal, 3};
  CHECK(co3.group_dim() == 4);
  CHECK(co3.chart_dim() == 5);
  CHECK(co3.ambient_dim() == 6);
  CHECK(co3.normalized_det());

  const StructureGroupSpec id2{Family::trivial, 2};
  CHECK(id2.group_dim() == 0);
  CHECK(id2.chart_dim() == 4);
  CHECK(id2.ambient_dim() == 4);
  CHECK(!id2.normalized_det());

  const StructureGroupSpec sc2{Family::scalars, 2};
  CHECK(sc2.group_dim() == 1);
  CHECK(sc2.chart_dim() == 3);
  CHECK(sc2.ambient_dim() == 4);
  CHECK(sc2.normalized_det());
}

TEST_CASE("symmetric packing is a bijection") {
  const int n = 3;
  bool seen[6] = {};
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const int k = sym_coord_index(n, i, j);
      REQUIRE(k >= 0);
      REQUIRE(k < sym_coord_count(n));
      CHECK(!seen[k]);
      seen[k] = true;
    }
}

TEST_CASE("chart and matrix views round-trip") {
  Rng rng(31);
  for (const auto& spec : kAllSpecs) {
    ChartPoint<double> p = random_chart_point(spec, rng);
    REQUIRE(static_cast<int>(p.coords.size()) == spec.ambient_dim());
    const SquareMat<double> m = chart_to_matrix(spec, p.coords);
    CHECK(max_abs_diff(matrix_to_chart(spec, m), p.coords) == 0.0);
    if (spec.family == Family::orthogonal || spec.family == Family::conformal)
      for (int i = 0; i < spec.n; ++i)
        for (int j = 0; j < spec.n; ++j) CHECK(m(i, j) == m(j, i));
  }
  CHECK_THROWS_AS(
      chart_to_matrix(StructureGroupSpec{Family::trivial, 2}, std::vector<double>(3)),
      std::invalid_argument);
}

TEST_CASE("random chart points satisfy their constraints") {
  Rng rng(32);
  for (const auto& spec : kAllSpecs) {
    for (int trial = 0; trial < 5; ++trial) {
      const ChartPoint<double> p = random_chart_point(spec, rng);
      CHECK(constraint_residual(p) < 1e-12);
    }
  }
  // Seeded overload is reproducible.
  const StructureGroupSpec spec{Family::conformal, 3};
  CHECK(max_abs_diff(random_chart_point(spec, 5u).coords,
                     random_chart_point(spec, 5u).coords) == 0.0);
}

TEST_CASE("identity transformation fixes every chart point") {
  Rng rng(33);
  for (const auto& spec : kAllSpecs) {
    const ChartPoint<double> p = random_chart_point(spec, rng);
    const SquareMat<double> id = identity_like(spec.n, 0.0);
    const ChartPoint<double> q = pointwise_action(spec, id, p);
    CHECK(max_abs_diff(q.coords, p.coords) < 1e-12);
  }
}

TEST_CASE("pointwise action is compatible with matrix multiplication") {
  Rng rng(34);
  for (const auto& spec : kAllSpecs) {
    for (int trial = 0; trial < 10; ++trial) {
      const ChartPoint<double> p = random_chart_point(spec, rng);
      const SquareMat<double> a = random_invertible(spec.n, rng);
      const SquareMat<double> b = random_invertible(spec.n, rng);
      const ChartPoint<double> two_step =
          pointwise_action(spec, a, pointwise_action(spec, b, p));
      const ChartPoint<double> one_step = pointwise_action(spec, mat_mul(a, b), p);
      CHECK(max_abs_diff(two_step.coords, one_step.coords) < 1e-11);
      // The action stays on the constraint set.
      CHECK(constraint_residual(two_step) < 1e-10);
    }
  }
}

TEST_CASE("orientation-reversing transformations stay on the scalar slice") {
  const StructureGroupSpec spec{Family::scalars, 2};
  const ChartPoint<double> p = random_chart_point(spec, 35u);
  SquareMat<double> flip(2, 0.0);
  flip(0, 1) = 1.0;
  flip(1, 0) = 1.0;  // determinant -1
  const ChartPoint<double> q = pointwise_action(spec, flip, p);
  CHECK(constraint_residual(q) < 1e-12);
}

TEST_CASE("singular transformations are rejected") {
  const StructureGroupSpec spec{Family::trivial, 2};
  const ChartPoint<double> p = random_chart_point(spec, 36u);
  const SquareMat<double> zero(2, 0.0);
  CHECK_THROWS_AS(pointwise_action(spec, zero, p), std::domain_error);
}

TEST_CASE("polynomial-entry action matches the scalar action on constants") {
  Rng rng(37);
  using Poly = TruncatedPoly<double>;
  for (const auto& spec : kAllSpecs) {
    const ChartPoint<double> p = random_chart_point(spec, rng);
    const SquareMat<double> a = random_invertible(spec.n, rng);
    const ChartPoint<double> want = pointwise_action(spec, a, p);

    SquareMat<Poly> ap(spec.n, Poly(spec.n, 2));
    for (int i = 0; i < spec.n; ++i)
      for (int j = 0; j < spec.n; ++j)
        ap(i, j) = Poly::constant(spec.n, 2, a(i, j));
    ChartPoint<Poly> pp{spec, {}};
    for (double c : p.coords) pp.coords.push_back(Poly::constant(spec.n, 2, c));

    const ChartPoint<Poly> got = pointwise_action(spec, ap, pp);
    for (std::size_t c = 0; c < got.coords.size(); ++c) {
      CHECK(got.coords[c].constant_term() ==
            doctest::Approx(want.coords[c]).epsilon(1e-12));
      for (std::size_t t = 1; t < got.coords[c].size(); ++t)
        CHECK(got.coords[c][t] == doctest::Approx(0.0));
    }
  }
}
