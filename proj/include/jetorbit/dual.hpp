#pragma once

#include <cmath>
#include <stdexcept>

namespace jetorbit {

/// First-order perturbation scalar a + eps*b with eps^2 = 0.  Threading these
/// through a computation carries an exact directional derivative alongside the
/// value, with no step-size error.
struct Dual {
  double val = 0.0;
  double eps = 0.0;

  Dual() = default;
  Dual(double v) : val(v) {}  // NOLINT: constants lift implicitly
  Dual(double v, double e) : val(v), eps(e) {}

  Dual& operator+=(const Dual& o) {
    val += o.val;
    eps += o.eps;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val -= o.val;
    eps -= o.eps;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    eps = eps * o.val + val * o.eps;
    val *= o.val;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    if (o.val == 0.0) throw std::domain_error("Dual: division by zero value part");
    eps = (eps * o.val - val * o.eps) / (o.val * o.val);
    val /= o.val;
    return *this;
  }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return {-a.val, -a.eps}; }
inline bool operator==(const Dual& a, const Dual& b) {
  return a.val == b.val && a.eps == b.eps;
}

// --- uniform scalar shims -------------------------------------------------
// The polynomial, matrix, and chart code is generic over a scalar that
// provides ring operations plus the helpers below.  Plain double and Dual are
// the two realizations.

inline double leading_value(double x) { return x; }
inline double leading_value(const Dual& x) { return x.val; }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Dual& x) { return x.val == 0.0 && x.eps == 0.0; }

inline double zero_like(double) { return 0.0; }
inline double one_like(double) { return 1.0; }
inline Dual zero_like(const Dual&) { return {}; }
inline Dual one_like(const Dual&) { return {1.0, 0.0}; }

/// Real power of a positive scalar.
inline double pow_real(double x, double e) {
  if (!(x > 0.0)) throw std::domain_error("pow_real: base must be positive");
  return std::pow(x, e);
}

/// Power rule (a + eps b)^e = a^e + eps * e * a^(e-1) * b, requires a > 0.
inline Dual pow_real(const Dual& x, double e) {
  if (!(x.val > 0.0)) throw std::domain_error("pow_real: base must be positive");
  const double p = std::pow(x.val, e);
  return {p, e * (p / x.val) * x.eps};
}

inline Dual lift_to_dual(double x) { return Dual(x); }

}  // namespace jetorbit
