#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetorbit/linalg.hpp"
#include "jetorbit/poly.hpp"
#include "jetorbit/rng.hpp"

namespace jetorbit {

/// Raised when a linear part is too ill-conditioned to invert reliably.
class ConditioningError : public std::runtime_error {
 public:
  explicit ConditioningError(const std::string& what) : std::runtime_error(what) {}
};

template <class S>
Eigen::MatrixXd leading_matrix(const SquareMat<S>& a) {
  Eigen::MatrixXd m(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m(i, j) = leading_value(a(i, j));
  return m;
}

inline double matrix_condition(const Eigen::MatrixXd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

/// Order-r jet of an origin-preserving diffeomorphism germ of R^n: zero
/// constant terms and an invertible linear part.  Composition of jets makes
/// these a group; the linear-part condition number is recorded up front so
/// inversion can refuse hopeless elements.
template <class S>
class JetGroupElement {
 public:
  explicit JetGroupElement(JetMap<S> map) : map_(std::move(map)) {
    if (map_.dim() != map_.vars())
      throw std::invalid_argument("JetGroupElement: map must go from R^n to R^n");
    if (map_.order() < 1)
      throw std::invalid_argument("JetGroupElement: order must be >= 1");
    for (int i = 0; i < map_.dim(); ++i)
      if (!is_zero(map_.comp(i).constant_term()))
        throw std::invalid_argument("JetGroupElement: map must fix the origin");
    cond_ = matrix_condition(leading_matrix(linear_part()));
    if (!(cond_ < std::numeric_limits<double>::infinity()))
      throw std::invalid_argument("JetGroupElement: singular linear part");
  }

  const JetMap<S>& map() const { return map_; }
  int dim() const { return map_.dim(); }
  int order() const { return map_.order(); }
  double condition_number() const { return cond_; }

  SquareMat<S> linear_part() const {
    const int n = dim();
    SquareMat<S> l(n, S{});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        MultiIndex e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(j)] = 1;
        l(i, j) = map_.comp(i).at(e);
      }
    return l;
  }

 private:
  JetMap<S> map_;
  double cond_;
};

inline JetGroupElement<double> group_identity(int n, int r) {
  return JetGroupElement<double>(JetMap<double>::identity(n, r));
}

template <class S>
JetGroupElement<S> group_compose(const JetGroupElement<S>& a, const JetGroupElement<S>& b) {
  return JetGroupElement<S>(compose(a.map(), b.map()));
}

template <class S>
JetGroupElement<S> group_truncate(const JetGroupElement<S>& g, int new_r) {
  return JetGroupElement<S>(g.map().truncated(new_r));
}

/// Compositional inverse by degree-by-degree back-substitution: seed with the
/// inverse linear part, then kill the lowest remaining error block each pass
/// (a degree-k correction feeds into g o h only through the linear part at
/// degree k, so one solve per degree suffices).
template <class S>
JetGroupElement<S> group_invert(const JetGroupElement<S>& g) {
  if (g.condition_number() > 1e8)
    throw ConditioningError("group_invert: linear part condition number exceeds 1e8");
  const int n = g.dim();
  const int r = g.order();
  const SquareMat<S> inv_l = mat_inverse(g.linear_part());
  const IndexTable& tab = index_table(n, r);

  JetMap<S> h(n, n, r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MultiIndex e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(j)] = 1;
      h.comp(i).at(e) = inv_l(i, j);
    }

  for (int k = 2; k <= r; ++k) {
    JetMap<S> err = compose(g.map(), h);
    for (int i = 0; i < n; ++i) {
      MultiIndex e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(i)] = 1;
      err.comp(i).at(e) -= S(1.0);
    }
    const std::size_t b0 = tab.block_begin(k);
    const std::size_t b1 = tab.block_begin(k + 1);
    for (int i = 0; i < n; ++i)
      for (std::size_t t = b0; t < b1; ++t) {
        S delta{};
        for (int j = 0; j < n; ++j) delta += inv_l(i, j) * err.comp(j)[t];
        h.comp(i)[t] -= delta;
      }
  }
  return JetGroupElement<S>(std::move(h));
}

/// Label of a one-parameter jet-group direction: perturb component i by the
/// monomial x^alpha.
struct LieGeneratorIndex {
  int component = 0;
  MultiIndex alpha;
};

/// All directions (i, alpha) with 1 <= |alpha| <= r: component-major, alpha
/// in graded-lex order.  Size n * (C(n+r, n) - 1).
inline std::vector<LieGeneratorIndex> lie_basis(int n, int r) {
  if (r < 1) throw std::invalid_argument("lie_basis: order must be >= 1");
  const IndexTable& tab = index_table(n, r);
  std::vector<LieGeneratorIndex> out;
  out.reserve(static_cast<std::size_t>(n) * (tab.size() - 1));
  for (int comp = 0; comp < n; ++comp)
    for (std::size_t t = 1; t < tab.size(); ++t) out.push_back({comp, tab.index(t)});
  return out;
}

/// Identity jet displaced by eps * x^alpha in one component; the curve whose
/// eps-derivative is the generator.
inline JetGroupElement<Dual> perturbed_identity(const LieGeneratorIndex& gen, int n, int r) {
  if (degree(gen.alpha) < 1 || degree(gen.alpha) > r)
    throw std::invalid_argument("perturbed_identity: generator degree out of range");
  JetMap<Dual> m = JetMap<Dual>::identity(n, r);
  m.comp(gen.component).at(gen.alpha) += Dual(0.0, 1.0);
  return JetGroupElement<Dual>(std::move(m));
}

/// Seeded generic element: linear part I + U(-0.3, 0.3) redrawn until its
/// condition number is below 50, higher coefficients U(-1, 1) / degree!.
inline JetGroupElement<double> group_random(int n, int r, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd l(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        l(i, j) = (i == j ? 1.0 : 0.0) + rng.uniform(-0.3, 0.3);
  } while (!(matrix_condition(l) < 50.0));

  JetMap<double> m(n, n, r);
  const IndexTable& tab = index_table(n, r);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MultiIndex e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(j)] = 1;
      m.comp(i).at(e) = l(i, j);
    }
  std::vector<double> inv_fact(static_cast<std::size_t>(r) + 1, 1.0);
  for (int d = 1; d <= r; ++d) inv_fact[static_cast<std::size_t>(d)] =
      inv_fact[static_cast<std::size_t>(d) - 1] / static_cast<double>(d);
  for (int i = 0; i < n; ++i)
    for (std::size_t t = tab.block_begin(2); t < tab.size(); ++t)
      m.comp(i)[t] = rng.uniform(-1.0, 1.0) *
                     inv_fact[static_cast<std::size_t>(tab.degree_at(t))];
  return JetGroupElement<double>(std::move(m));
}

}  // namespace jetorbit
