#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <jetorbit/jet_group.hpp>
#include <jetorbit/rng.hpp>

using namespace jetorbit;

namespace {

double max_abs_diff(const JetMap<double>& a, const JetMap<double>& b) {
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (std::size_t t = 0; t < a.comp(i).size(); ++t)
      worst = std::max(worst, std::fabs(a.comp(i)[t] - b.comp(i)[t]));
  return worst;
}

double distance_from_identity(const JetGroupElement<double>& g) {
  return max_abs_diff(g.map(), JetMap<double>::identity(g.dim(), g.order()));
}

}  // namespace

TEST_CASE("group element validation") {
  // Nonzero constant term.
  JetMap<double> shifted = JetMap<double>::identity(2, 2);
  shifted.comp(0)[0] = 0.1;
  CHECK_THROWS_AS((void)JetGroupElement<double>(shifted), std::invalid_argument);

  // Singular linear part.
  JetMap<double> flat(2, 2, 2);
  flat.comp(0).at({1, 0}) = 1.0;  // second component has no linear term
  CHECK_THROWS_AS((void)JetGroupElement<double>(flat), std::invalid_argument);

  // Must be a self-map of R^n.
  CHECK_THROWS_AS(JetGroupElement<double>(JetMap<double>(2, 3, 2)),
                  std::invalid_argument);

  CHECK_NOTHROW(group_identity(3, 4));
  CHECK(group_identity(3, 4).condition_number() == doctest::Approx(1.0));
}

TEST_CASE("inversion: frozen one-variable oracle") {
  // g(x) = x + x^2; g^{ -1 }(x) = x - x^2 + 2x^3 + O(x^4).
  JetMap<double> m(1, 1, 3);
  m.comp(0).at({1}) = 1.0;
  m.comp(0).at({2}) = 1.0;
  const JetGroupElement<double> inv = group_invert(JetGroupElement<double>(m));
  CHECK(inv.map().comp(0).at({1}) == doctest::Approx(1.0));
  CHECK(inv.map().comp(0).at({2}) == doctest::Approx(-1.0));
  CHECK(inv.map().comp(0).at({3}) == doctest::Approx(2.0));
}

TEST_CASE("group axioms over random elements") {
  Rng pick(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(pick.raw() % 3);
    const int r = 1 + static_cast<int>(pick.raw() % 3);
    const auto a = group_random(n, r, pick.raw());
    const auto b = group_random(n, r, pick.raw());
    const auto c = group_random(n, r, pick.raw());

    // Associativity.
    CHECK(max_abs_diff(group_compose(group_compose(a, b), c).map(),
                       group_compose(a, group_compose(b, c)).map()) < 1e-9);

    // Identity is neutral.
    const auto id = group_identity(n, r);
    CHECK(max_abs_diff(group_compose(a, id).map(), a.map()) < 1e-14);
    CHECK(max_abs_diff(group_compose(id, a).map(), a.map()) < 1e-14);

    // Inversion round-trips on both sides.
    const auto inv = group_invert(a);
    CHECK(distance_from_identity(group_compose(a, inv)) < 1e-9);
    CHECK(distance_from_identity(group_compose(inv, a)) < 1e-9);
  }
}

TEST_CASE("truncation commutes with composition") {
  Rng pick(22);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = group_random(2, 4, pick.raw());
    const auto b = group_random(2, 4, pick.raw());
    const auto whole = group_truncate(group_compose(a, b), 2);
    const auto parts = group_compose(group_truncate(a, 2), group_truncate(b, 2));
    CHECK(max_abs_diff(whole.map(), parts.map()) < 1e-12);
  }
}

TEST_CASE("inversion refuses ill-conditioned linear parts") {
  JetMap<double> m = JetMap<double>::identity(2, 2);
  m.comp(1).at({0, 1}) = 1e-9;  // linear part diag(1, 1e-9): condition 1e9
  const JetGroupElement<double> g{std::move(m)};
  CHECK(g.condition_number() > 1e8);
  CHECK_THROWS_AS(group_invert(g), ConditioningError);
}

TEST_CASE("generator basis enumeration") {
  CHECK(lie_basis(2, 3).size() == 18);
  CHECK(lie_basis(3, 4).size() == 102);
  CHECK(lie_basis(1, 1).size() == 1);
  CHECK_THROWS_AS(lie_basis(2, 0), std::invalid_argument);

  // Component-major, graded-lex within a component, constants excluded.
  const auto basis = lie_basis(2, 2);
  REQUIRE(basis.size() == 10);
  CHECK(basis[0].component == 0);
  CHECK(basis[0].alpha == MultiIndex{1, 0});
  CHECK(basis[1].alpha == MultiIndex{0, 1});
  CHECK(basis[2].alpha == MultiIndex{2, 0});
  CHECK(basis[5].component == 1);
  CHECK(basis[5].alpha == MultiIndex{1, 0});
  for (const auto& gen : basis) CHECK(degree(gen.alpha) >= 1);
}

TEST_CASE("perturbed identity carries a unit derivative at its monomial") {
  const LieGeneratorIndex gen{1, {1, 1}};
  const JetGroupElement<Dual> g = perturbed_identity(gen, 2, 3);
  CHECK(g.map().comp(1).at({1, 1}).eps == doctest::Approx(1.0));
  CHECK(g.map().comp(1).at({1, 1}).val == doctest::Approx(0.0));
  CHECK(g.map().comp(0).at({1, 0}).val == doctest::Approx(1.0));
  CHECK(g.map().comp(1).at({0, 1}).val == doctest::Approx(1.0));

  CHECK_THROWS_AS((void)perturbed_identity(LieGeneratorIndex{0, {0, 0}}, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)perturbed_identity(LieGeneratorIndex{0, {4, 0}}, 2, 3), std::invalid_argument);
}

TEST_CASE("random group elements are reproducible and well-conditioned") {
  const auto a = group_random(3, 3, 77);
  const auto b = group_random(3, 3, 77);
  const auto c = group_random(3, 3, 78);
  CHECK(max_abs_diff(a.map(), b.map()) == 0.0);
  CHECK(max_abs_diff(a.map(), c.map()) > 0.0);
  CHECK(a.condition_number() < 50.0);
}
