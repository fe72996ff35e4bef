#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jetorbit/dual.hpp"

namespace jetorbit {

/// Dense square matrix over a ring element type T (double, Dual, or a
/// truncated polynomial over either).  Entry operations only assume the
/// uniform scalar shims (zero_like/one_like/leading_value) plus ring
/// arithmetic; division is needed only by the LU routines.
template <class T>
class SquareMat {
 public:
  SquareMat(int n, const T& fill) : n_(n), e_(static_cast<std::size_t>(n) * n, fill) {
    if (n < 1) throw std::invalid_argument("SquareMat: need n >= 1");
  }

  int dim() const { return n_; }
  T& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * n_ + j];
  }

 private:
  int n_;
  std::vector<T> e_;
};

template <class T>
SquareMat<T> identity_like(int n, const T& proto) {
  SquareMat<T> m(n, zero_like(proto));
  for (int i = 0; i < n; ++i) m(i, i) = one_like(proto);
  return m;
}

template <class T>
SquareMat<T> mat_mul(const SquareMat<T>& a, const SquareMat<T>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("mat_mul: dimension mismatch");
  const int n = a.dim();
  SquareMat<T> out(n, zero_like(a(0, 0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

template <class T>
SquareMat<T> mat_transpose(const SquareMat<T>& a) {
  const int n = a.dim();
  SquareMat<T> out(n, zero_like(a(0, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = a(j, i);
  return out;
}

template <class T>
SquareMat<T> mat_scale(SquareMat<T> a, const T& f) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = a(i, j) * f;
  return a;
}

template <class T>
T det_cofactor(const SquareMat<T>& m) {
  const int n = m.dim();
  if (n == 1) return m(0, 0);
  T acc = zero_like(m(0, 0));
  for (int j = 0; j < n; ++j) {
    SquareMat<T> minor(n - 1, zero_like(m(0, 0)));
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(i - 1, cc++) = m(i, c);
      }
    }
    const T term = m(0, j) * det_cofactor(minor);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

/// LU determinant with partial pivoting on the value part; needs T division.
template <class T>
T det_lu(SquareMat<T> m) {
  const int n = m.dim();
  bool negate = false;
  T det = one_like(m(0, 0));
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(leading_value(m(k, k)));
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::fabs(leading_value(m(i, k)));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (best == 0.0) throw std::domain_error("det: singular at leading order");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      const T f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
    det = det * m(k, k);
  }
  return negate ? zero_like(det) - det : det;
}

/// Cofactor expansion up to 4x4, LU elimination beyond.
template <class T>
T mat_det(const SquareMat<T>& m) {
  return m.dim() <= 4 ? det_cofactor(m) : det_lu(m);
}

/// Gauss-Jordan inverse with partial pivoting on the value part.
template <class T>
SquareMat<T> mat_inverse(const SquareMat<T>& a) {
  const int n = a.dim();
  SquareMat<T> m = a;
  SquareMat<T> inv = identity_like(n, a(0, 0));
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(leading_value(m(k, k)));
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::fabs(leading_value(m(i, k)));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (best == 0.0) throw std::domain_error("mat_inverse: singular at leading order");
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(m(k, j), m(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    const T pivot = m(k, k);
    for (int j = 0; j < n; ++j) {
      m(k, j) = m(k, j) / pivot;
      inv(k, j) = inv(k, j) / pivot;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const T f = m(i, k);
      if (is_zero(f)) continue;
      for (int j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

}  // namespace jetorbit
