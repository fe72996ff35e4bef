#include "jetorbit/chart.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace jetorbit {

std::string family_token(Family f) {
  switch (f) {
    case Family::orthogonal: return "on";
    case Family::conformal: return "co";
    case Family::trivial: return "id";
    case Family::scalars: return "scalar";
  }
  throw std::logic_error("unreachable");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::orthogonal: return "orthogonal";
    case Family::conformal: return "conformal";
    case Family::trivial: return "trivial";
    case Family::scalars: return "scalars";
  }
  throw std::logic_error("unreachable");
}

Family family_from_token(const std::string& token) {
  if (token == "on") return Family::orthogonal;
  if (token == "co") return Family::conformal;
  if (token == "id") return Family::trivial;
  if (token == "scalar") return Family::scalars;
  throw std::invalid_argument("unknown family token '" + token +
                              "' (expected on, co, id, or scalar)");
}

namespace {

Eigen::MatrixXd to_eigen(const StructureGroupSpec& spec, const std::vector<double>& coords) {
  const SquareMat<double> m = chart_to_matrix(spec, coords);
  Eigen::MatrixXd e(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i)
    for (int j = 0; j < spec.n; ++j) e(i, j) = m(i, j);
  return e;
}

double min_eigenvalue(const Eigen::MatrixXd& s) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  return eig.eigenvalues()(0);
}

double condition(const Eigen::MatrixXd& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace

ChartPoint<double> random_chart_point(const StructureGroupSpec& spec, Rng& rng) {
  const int n = spec.n;
  if (n < 1) throw std::invalid_argument("random_chart_point: need n >= 1");
  if (spec.family == Family::orthogonal || spec.family == Family::conformal) {
    Eigen::MatrixXd s(n, n);
    do {
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          const double v = (i == j ? 1.0 : 0.0) + rng.uniform(-0.3, 0.3);
          s(i, j) = v;
          s(j, i) = v;
        }
    } while (!(min_eigenvalue(s) > 0.1));
    if (spec.family == Family::conformal)
      s /= std::pow(s.determinant(), 1.0 / static_cast<double>(n));
    std::vector<double> coords(static_cast<std::size_t>(spec.ambient_dim()));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        coords[static_cast<std::size_t>(sym_coord_index(n, i, j))] = s(i, j);
    return {spec, std::move(coords)};
  }

  Eigen::MatrixXd x(n, n);
  do {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = (i == j ? 1.0 : 0.0) + rng.uniform(-0.3, 0.3);
  } while (!(condition(x) < 50.0));
  if (spec.family == Family::scalars)
    x /= std::pow(std::fabs(x.determinant()), 1.0 / static_cast<double>(n));
  std::vector<double> coords(static_cast<std::size_t>(spec.ambient_dim()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) coords[static_cast<std::size_t>(i * n + j)] = x(i, j);
  return {spec, std::move(coords)};
}

ChartPoint<double> random_chart_point(const StructureGroupSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return random_chart_point(spec, rng);
}

double constraint_residual(const ChartPoint<double>& p) {
  const Eigen::MatrixXd m = to_eigen(p.spec, p.coords);
  switch (p.spec.family) {
    case Family::orthogonal: {
      const double lam = min_eigenvalue(m);
      return lam > 0.0 ? 0.0 : -lam;
    }
    case Family::conformal:
      return std::fabs(m.determinant() - 1.0);
    case Family::trivial:
      return std::fabs(m.determinant()) > 0.0 ? 0.0 : 1.0;
    case Family::scalars:
      return std::fabs(std::fabs(m.determinant()) - 1.0);
  }
  throw std::logic_error("unreachable");
}

}  // namespace jetorbit
