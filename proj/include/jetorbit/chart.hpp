#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetorbit/linalg.hpp"
#include "jetorbit/rng.hpp"

namespace jetorbit {

/// Structure group on the frame bundle, i.e. which reductions of the full
/// linear frame group the chart parametrizes:
///  - orthogonal:  metrics; chart = symmetric positive-definite S, A.S.A^T
///  - conformal:   conformal metrics; same chart normalized to det S = 1
///  - trivial:     parallelizations; chart = all of GL_n, A.X
///  - scalars:     volume-projective frames; |det X| = 1 slice of GL_n
enum class Family { orthogonal, conformal, trivial, scalars };

struct StructureGroupSpec {
  Family family = Family::orthogonal;
  int n = 1;

  /// Dimension m of the structure group inside GL_n.
  int group_dim() const {
    switch (family) {
      case Family::orthogonal: return n * (n - 1) / 2;
      case Family::conformal: return n * (n - 1) / 2 + 1;
      case Family::trivial: return 0;
      case Family::scalars: return 1;
    }
    throw std::logic_error("unreachable");
  }

  /// Intrinsic dimension d = n^2 - m of the quotient GL_n / G.
  int chart_dim() const { return n * n - group_dim(); }

  /// Stored coordinate count: the symmetric or full matrix holding the chart
  /// value.  Equals chart_dim() except for the determinant-normalized
  /// families, which keep the constraint implicit instead of eliminating a
  /// coordinate.
  int ambient_dim() const {
    switch (family) {
      case Family::orthogonal:
      case Family::conformal: return n * (n + 1) / 2;
      case Family::trivial:
      case Family::scalars: return n * n;
    }
    throw std::logic_error("unreachable");
  }

  bool normalized_det() const {
    return family == Family::conformal || family == Family::scalars;
  }
};

std::string family_token(Family f);
std::string family_name(Family f);
/// Parses the CLI tokens on/co/id/scalar; throws std::invalid_argument.
Family family_from_token(const std::string& token);

inline int sym_coord_count(int n) { return n * (n + 1) / 2; }

/// Position of the (i, j), i <= j entry in row-major upper-triangle packing.
inline int sym_coord_index(int n, int i, int j) {
  return i * n - i * (i - 1) / 2 + (j - i);
}

/// Chart value over an arbitrary ring element type T (scalars for points,
/// truncated polynomials for jets of sections).  coords holds the packed
/// upper triangle for the symmetric families, the full row-major matrix
/// otherwise.
template <class T>
struct ChartPoint {
  StructureGroupSpec spec;
  std::vector<T> coords;
};

template <class T>
SquareMat<T> chart_to_matrix(const StructureGroupSpec& spec, const std::vector<T>& coords) {
  if (static_cast<int>(coords.size()) != spec.ambient_dim())
    throw std::invalid_argument("chart_to_matrix: wrong coordinate count");
  const int n = spec.n;
  SquareMat<T> m(n, zero_like(coords.front()));
  if (spec.family == Family::orthogonal || spec.family == Family::conformal) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const T& v = coords[static_cast<std::size_t>(sym_coord_index(n, i, j))];
        m(i, j) = v;
        m(j, i) = v;
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = coords[static_cast<std::size_t>(i * n + j)];
  }
  return m;
}

template <class T>
std::vector<T> matrix_to_chart(const StructureGroupSpec& spec, const SquareMat<T>& m) {
  const int n = spec.n;
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(spec.ambient_dim()));
  if (spec.family == Family::orthogonal || spec.family == Family::conformal) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) out.push_back(m(i, j));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.push_back(m(i, j));
  }
  return out;
}

/// The left GL_n action on the chart, with the determinant normalization that
/// keeps the constrained families on their slice.  A may have polynomial
/// entries (the Jacobian jet); everything stays inside the truncated ring.
template <class T>
ChartPoint<T> pointwise_action(const StructureGroupSpec& spec, const SquareMat<T>& a,
                               const ChartPoint<T>& p) {
  if (a.dim() != spec.n) throw std::invalid_argument("pointwise_action: dimension mismatch");
  if (p.spec.family != spec.family || p.spec.n != spec.n)
    throw std::invalid_argument("pointwise_action: chart spec mismatch");

  // Reject transformations that are singular at the base point.
  {
    SquareMat<double> lead(a.dim(), 0.0);
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) lead(i, j) = leading_value(a(i, j));
    bool singular = false;
    try {
      singular = mat_det(lead) == 0.0;
    } catch (const std::domain_error&) {
      singular = true;
    }
    if (singular) throw std::domain_error("pointwise_action: singular transformation");
  }

  const SquareMat<T> m = chart_to_matrix(spec, p.coords);
  SquareMat<T> out(spec.n, zero_like(p.coords.front()));
  const double inv_n = 1.0 / static_cast<double>(spec.n);
  switch (spec.family) {
    case Family::orthogonal:
      out = mat_mul(mat_mul(a, m), mat_transpose(a));
      break;
    case Family::conformal: {
      out = mat_mul(mat_mul(a, m), mat_transpose(a));
      const T d = mat_det(out);
      out = mat_scale(std::move(out), pow_real(d, -inv_n));
      break;
    }
    case Family::trivial:
      out = mat_mul(a, m);
      break;
    case Family::scalars: {
      out = mat_mul(a, m);
      T d = mat_det(out);
      const double sign = leading_value(d);
      if (sign == 0.0)
        throw std::domain_error("pointwise_action: determinant vanishes at base point");
      if (sign < 0.0) d = zero_like(d) - d;
      out = mat_scale(std::move(out), pow_real(d, -inv_n));
      break;
    }
  }
  return ChartPoint<T>{spec, matrix_to_chart(spec, out)};
}

/// Seeded generic chart value near the identity:
///  - orthogonal/conformal: I + symmetric U(-0.3, 0.3), redrawn until the
///    smallest eigenvalue clears 0.1, det-normalized for conformal;
///  - trivial/scalars: I + U(-0.3, 0.3), redrawn until the condition number
///    is below 50, |det|-normalized for scalars.
ChartPoint<double> random_chart_point(const StructureGroupSpec& spec, Rng& rng);
ChartPoint<double> random_chart_point(const StructureGroupSpec& spec, std::uint64_t seed);

/// How far the point sits from its family's constraint set (0 when clean):
/// SPD defect for orthogonal, |det - 1| for conformal, ||det| - 1| for
/// scalars, singularity indicator for trivial.
double constraint_residual(const ChartPoint<double>& p);

}  // namespace jetorbit
