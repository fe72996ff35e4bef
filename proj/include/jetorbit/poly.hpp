#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jetorbit/dual.hpp"
#include "jetorbit/multi_index.hpp"

namespace jetorbit {

/// Multivariate polynomial in vars() variables truncated at total degree
/// order().  Coefficients are stored densely in graded-lex position order
/// (see IndexTable); every operation silently drops terms above the order.
template <class S>
class TruncatedPoly {
 public:
  TruncatedPoly(int n, int r) : tab_(&index_table(n, r)), c_(tab_->size()) {}

  static TruncatedPoly constant(int n, int r, const S& value) {
    TruncatedPoly p(n, r);
    p.c_[0] = value;
    return p;
  }

  /// The coordinate monomial x_i.
  static TruncatedPoly variable(int n, int r, int i) {
    if (r < 1) throw std::invalid_argument("variable: order must be >= 1");
    if (i < 0 || i >= n) throw std::invalid_argument("variable: index out of range");
    TruncatedPoly p(n, r);
    MultiIndex a(static_cast<std::size_t>(n), 0);
    a[static_cast<std::size_t>(i)] = 1;
    p.at(a) = S(1.0);
    return p;
  }

  int vars() const { return tab_->vars(); }
  int order() const { return tab_->order(); }
  std::size_t size() const { return c_.size(); }
  const IndexTable& table() const { return *tab_; }

  S& operator[](std::size_t t) { return c_[t]; }
  const S& operator[](std::size_t t) const { return c_[t]; }
  S& at(const MultiIndex& a) { return c_[tab_->position(a)]; }
  const S& at(const MultiIndex& a) const { return c_[tab_->position(a)]; }
  const S& constant_term() const { return c_[0]; }

  TruncatedPoly& operator+=(const TruncatedPoly& o) {
    require_same_shape(o);
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
    return *this;
  }
  TruncatedPoly& operator-=(const TruncatedPoly& o) {
    require_same_shape(o);
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] -= o.c_[t];
    return *this;
  }
  TruncatedPoly& operator*=(const S& w) {
    for (auto& c : c_) c *= w;
    return *this;
  }

  /// Copy of the degree <= new_r prefix, stored at order new_r.
  TruncatedPoly truncated(int new_r) const {
    if (new_r < 0 || new_r > order())
      throw std::invalid_argument("truncated: target order out of range");
    TruncatedPoly out(vars(), new_r);
    std::copy_n(c_.begin(), out.size(), out.c_.begin());
    return out;
  }

  /// d/dx_i, stored at order r-1.
  TruncatedPoly partial(int i) const {
    if (order() < 1) throw std::invalid_argument("partial: order must be >= 1");
    if (i < 0 || i >= vars()) throw std::invalid_argument("partial: variable out of range");
    TruncatedPoly out(vars(), order() - 1);
    for (std::size_t t = 0; t < size(); ++t) {
      const MultiIndex& a = tab_->index(t);
      const int power = a[static_cast<std::size_t>(i)];
      if (power == 0) continue;
      MultiIndex b = a;
      --b[static_cast<std::size_t>(i)];
      out.at(b) += S(static_cast<double>(power)) * c_[t];
    }
    return out;
  }

  void require_same_shape(const TruncatedPoly& o) const {
    if (tab_ != o.tab_)
      throw std::invalid_argument("polynomial shape mismatch: operands need equal (n, r)");
  }

 private:
  const IndexTable* tab_;
  std::vector<S> c_;
};

template <class S>
TruncatedPoly<S> operator+(TruncatedPoly<S> a, const TruncatedPoly<S>& b) {
  return a += b;
}
template <class S>
TruncatedPoly<S> operator-(TruncatedPoly<S> a, const TruncatedPoly<S>& b) {
  return a -= b;
}
template <class S>
TruncatedPoly<S> operator-(const TruncatedPoly<S>& a) {
  TruncatedPoly<S> out(a.vars(), a.order());
  out -= a;
  return out;
}
template <class S>
TruncatedPoly<S> operator*(TruncatedPoly<S> p, const S& w) {
  return p *= w;
}
template <class S>
TruncatedPoly<S> operator*(const S& w, TruncatedPoly<S> p) {
  return p *= w;
}

/// dst += w * src.
template <class S>
void add_scaled(TruncatedPoly<S>& dst, const TruncatedPoly<S>& src, const S& w) {
  dst.require_same_shape(src);
  for (std::size_t t = 0; t < dst.size(); ++t) dst[t] += w * src[t];
}

/// Truncated product: terms of total degree above the common order vanish.
template <class S>
TruncatedPoly<S> operator*(const TruncatedPoly<S>& p, const TruncatedPoly<S>& q) {
  p.require_same_shape(q);
  const IndexTable& tab = p.table();
  const int r = p.order();
  TruncatedPoly<S> out(p.vars(), r);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (is_zero(p[i])) continue;
    const std::size_t jmax = tab.block_begin(r - tab.degree_at(i) + 1);
    for (std::size_t j = 0; j < jmax; ++j) {
      if (is_zero(q[j])) continue;
      out[tab.prod_position(i, j)] += p[i] * q[j];
    }
  }
  return out;
}

inline TruncatedPoly<Dual> lift_to_dual(const TruncatedPoly<double>& p) {
  TruncatedPoly<Dual> out(p.vars(), p.order());
  for (std::size_t t = 0; t < p.size(); ++t) out[t] = Dual(p[t]);
  return out;
}

template <class S>
TruncatedPoly<S> zero_like(const TruncatedPoly<S>& p) {
  return TruncatedPoly<S>(p.vars(), p.order());
}
template <class S>
TruncatedPoly<S> one_like(const TruncatedPoly<S>& p) {
  return TruncatedPoly<S>::constant(p.vars(), p.order(), S(1.0));
}
template <class S>
double leading_value(const TruncatedPoly<S>& p) {
  return leading_value(p.constant_term());
}
template <class S>
bool is_zero(const TruncatedPoly<S>& p) {
  for (std::size_t t = 0; t < p.size(); ++t)
    if (!is_zero(p[t])) return false;
  return true;
}

/// Multiplicative inverse as a truncated geometric series; needs a constant
/// term with nonzero value part.
template <class S>
TruncatedPoly<S> reciprocal(const TruncatedPoly<S>& p) {
  const S c0 = p.constant_term();
  if (leading_value(c0) == 0.0)
    throw std::domain_error("reciprocal: constant term must be invertible");
  const S inv_c0 = S(1.0) / c0;
  const int r = p.order();
  const TruncatedPoly<S> u = one_like(p) - p * inv_c0;  // valuation >= 1
  TruncatedPoly<S> acc = one_like(p);
  TruncatedPoly<S> upow = u;
  for (int k = 1; k <= r; ++k) {
    acc += upow;
    if (k < r) upow = upow * u;
  }
  return acc * inv_c0;
}

template <class S>
TruncatedPoly<S> operator/(const TruncatedPoly<S>& p, const TruncatedPoly<S>& q) {
  return p * reciprocal(q);
}

/// p^e for real e via the binomial series around the (strictly positive)
/// constant term: p = c0 (1 + u) with valuation(u) >= 1, so the series stops
/// at the truncation order.
template <class S>
TruncatedPoly<S> pow_real(const TruncatedPoly<S>& p, double e) {
  const S c0 = p.constant_term();
  if (!(leading_value(c0) > 0.0))
    throw std::domain_error("pow_real: constant term must be positive");
  const int r = p.order();
  const TruncatedPoly<S> u = p * (S(1.0) / c0) - one_like(p);
  TruncatedPoly<S> acc = one_like(p);
  TruncatedPoly<S> upow = u;
  double coef = 1.0;
  for (int k = 1; k <= r; ++k) {
    coef *= (e - static_cast<double>(k - 1)) / static_cast<double>(k);
    add_scaled(acc, upow, S(coef));
    if (k < r) upow = upow * u;
  }
  return acc * pow_real(c0, e);
}

/// Tuple of truncated polynomials sharing (vars, order): a jet of a map
/// R^vars -> R^dim at the origin.
template <class S>
class JetMap {
 public:
  JetMap(int n, int d, int r) : comps_(static_cast<std::size_t>(d), TruncatedPoly<S>(n, r)) {
    if (d < 1) throw std::invalid_argument("JetMap: need at least one component");
  }

  explicit JetMap(std::vector<TruncatedPoly<S>> comps) : comps_(std::move(comps)) {
    if (comps_.empty()) throw std::invalid_argument("JetMap: need at least one component");
    for (const auto& c : comps_) c.require_same_shape(comps_.front());
  }

  /// Jet of the identity map of R^n.
  static JetMap identity(int n, int r) {
    JetMap m(n, n, r);
    for (int i = 0; i < n; ++i) m.comps_[static_cast<std::size_t>(i)] =
        TruncatedPoly<S>::variable(n, r, i);
    return m;
  }

  int vars() const { return comps_.front().vars(); }
  int dim() const { return static_cast<int>(comps_.size()); }
  int order() const { return comps_.front().order(); }

  TruncatedPoly<S>& comp(int i) { return comps_[static_cast<std::size_t>(i)]; }
  const TruncatedPoly<S>& comp(int i) const { return comps_[static_cast<std::size_t>(i)]; }

  JetMap truncated(int new_r) const {
    std::vector<TruncatedPoly<S>> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c.truncated(new_r));
    return JetMap(std::move(out));
  }

 private:
  std::vector<TruncatedPoly<S>> comps_;
};

/// Jet of outer o inner.  inner must fix the origin (zero constant terms), so
/// substituting it into the truncated outer is exact on the shared order.
template <class S>
JetMap<S> compose(const JetMap<S>& outer, const JetMap<S>& inner) {
  if (outer.vars() != inner.dim())
    throw std::invalid_argument("compose: outer arity must match inner dimension");
  if (outer.order() != inner.order())
    throw std::invalid_argument("compose: operand orders must match");
  for (int j = 0; j < inner.dim(); ++j)
    if (!is_zero(inner.comp(j).constant_term()))
      throw std::domain_error("compose: inner map must fix the origin");

  const int n = inner.vars();
  const int r = inner.order();
  const IndexTable& otab = index_table(outer.vars(), r);

  // Monomials of the inner components, built by peeling one variable at a
  // time; the predecessor always sits in an earlier degree block.
  std::vector<TruncatedPoly<S>> monos;
  monos.reserve(otab.size());
  monos.push_back(TruncatedPoly<S>::constant(n, r, S(1.0)));
  for (std::size_t t = 1; t < otab.size(); ++t) {
    const MultiIndex& a = otab.index(t);
    std::size_t j = 0;
    while (a[j] == 0) ++j;
    MultiIndex prev = a;
    --prev[j];
    monos.push_back(monos[otab.position(prev)] * inner.comp(static_cast<int>(j)));
  }

  JetMap<S> out(n, outer.dim(), r);
  for (int c = 0; c < outer.dim(); ++c) {
    const TruncatedPoly<S>& oc = outer.comp(c);
    for (std::size_t t = 0; t < otab.size(); ++t) {
      if (is_zero(oc[t])) continue;
      add_scaled(out.comp(c), monos[t], oc[t]);
    }
  }
  return out;
}

inline JetMap<Dual> lift_to_dual(const JetMap<double>& m) {
  std::vector<TruncatedPoly<Dual>> comps;
  comps.reserve(static_cast<std::size_t>(m.dim()));
  for (int i = 0; i < m.dim(); ++i) comps.push_back(lift_to_dual(m.comp(i)));
  return JetMap<Dual>(std::move(comps));
}

}  // namespace jetorbit
