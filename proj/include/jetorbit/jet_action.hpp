#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jetorbit/chart.hpp"
#include "jetorbit/jet_group.hpp"
#include "jetorbit/poly.hpp"

namespace jetorbit {

/// Order-r jet of a local section of the chart bundle: each stored chart
/// coordinate as a truncated polynomial in the n base variables.
template <class S>
struct SectionJet {
  StructureGroupSpec spec;
  JetMap<S> jet;

  SectionJet(const StructureGroupSpec& s, JetMap<S> j) : spec(s), jet(std::move(j)) {
    if (jet.vars() != spec.n)
      throw std::invalid_argument("SectionJet: base dimension mismatch");
    if (jet.dim() != spec.ambient_dim())
      throw std::invalid_argument("SectionJet: chart coordinate count mismatch");
  }

  int order() const { return jet.order(); }
};

/// Jacobian of an order-(r+1) jet as an n x n matrix of order-r polynomials;
/// its value at the origin is the linear part.
template <class S>
SquareMat<TruncatedPoly<S>> jacobian_jet(const JetGroupElement<S>& g) {
  const int n = g.dim();
  const int r = g.order() - 1;
  SquareMat<TruncatedPoly<S>> jac(n, TruncatedPoly<S>(n, r));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jac(i, j) = g.map().comp(i).partial(j);
  return jac;
}

/// Prolonged left action of an order-(r+1) jet-group element on an order-r
/// section jet: transform the chart value pointwise by the Jacobian, then
/// pull the result back through the inverse reparametrization.  At r = 0 the
/// pullback is trivial and the pointwise step with the linear part remains.
template <class S>
SectionJet<S> act_on_section(const JetGroupElement<S>& g, const SectionJet<S>& mu) {
  const StructureGroupSpec spec = mu.spec;
  const int r = mu.order();
  if (g.dim() != spec.n)
    throw std::invalid_argument("act_on_section: base dimension mismatch");
  if (g.order() != r + 1)
    throw std::invalid_argument(
        "act_on_section: group element order must be section order + 1");

  const SquareMat<TruncatedPoly<S>> jac = jacobian_jet(g);
  std::vector<TruncatedPoly<S>> coords;
  coords.reserve(static_cast<std::size_t>(mu.jet.dim()));
  for (int c = 0; c < mu.jet.dim(); ++c) coords.push_back(mu.jet.comp(c));
  ChartPoint<TruncatedPoly<S>> moved =
      pointwise_action(spec, jac, ChartPoint<TruncatedPoly<S>>{spec, std::move(coords)});

  if (r == 0) return SectionJet<S>(spec, JetMap<S>(std::move(moved.coords)));

  const JetGroupElement<S> inverse = group_invert(group_truncate(g, r));
  const JetMap<S> transformed(std::move(moved.coords));
  return SectionJet<S>(spec, compose(transformed, inverse.map()));
}

/// Coefficient vector: chart coordinate major, graded-lex minor.  Linear and
/// bijective with unflatten; length ambient_dim * C(n+r, n).
template <class S>
std::vector<S> flatten(const SectionJet<S>& mu) {
  std::vector<S> out;
  out.reserve(static_cast<std::size_t>(mu.jet.dim()) * mu.jet.comp(0).size());
  for (int c = 0; c < mu.jet.dim(); ++c)
    for (std::size_t t = 0; t < mu.jet.comp(c).size(); ++t)
      out.push_back(mu.jet.comp(c)[t]);
  return out;
}

template <class S>
SectionJet<S> unflatten(const StructureGroupSpec& spec, int r, const std::vector<S>& v) {
  const auto block = static_cast<std::size_t>(coeff_count(spec.n, r));
  const auto amb = static_cast<std::size_t>(spec.ambient_dim());
  if (v.size() != amb * block)
    throw std::invalid_argument("unflatten: wrong coefficient vector length");
  std::vector<TruncatedPoly<S>> comps;
  comps.reserve(amb);
  for (std::size_t c = 0; c < amb; ++c) {
    TruncatedPoly<S> p(spec.n, r);
    for (std::size_t t = 0; t < block; ++t) p[t] = v[c * block + t];
    comps.push_back(std::move(p));
  }
  return SectionJet<S>(spec, JetMap<S>(std::move(comps)));
}

inline SectionJet<Dual> lift_to_dual(const SectionJet<double>& mu) {
  return SectionJet<Dual>(mu.spec, lift_to_dual(mu.jet));
}

/// Largest coefficient of the determinant constraint violation across the
/// whole jet (0 for the unconstrained families).
inline double jet_constraint_residual(const SectionJet<double>& mu) {
  if (!mu.spec.normalized_det()) return 0.0;
  std::vector<TruncatedPoly<double>> coords;
  coords.reserve(static_cast<std::size_t>(mu.jet.dim()));
  for (int c = 0; c < mu.jet.dim(); ++c) coords.push_back(mu.jet.comp(c));
  TruncatedPoly<double> det = mat_det(chart_to_matrix(mu.spec, coords));
  if (mu.spec.family == Family::scalars && leading_value(det) < 0.0)
    det = zero_like(det) - det;
  det[0] -= 1.0;
  double worst = 0.0;
  for (std::size_t t = 0; t < det.size(); ++t)
    worst = std::max(worst, std::fabs(det[t]));
  return worst;
}

}  // namespace jetorbit
