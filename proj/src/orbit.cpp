#include "jetorbit/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "jetorbit/bounds.hpp"
#include "jetorbit/rng.hpp"

namespace jetorbit {

Eigen::VectorXd infinitesimal_generator(const LieGeneratorIndex& gen,
                                        const SectionJet<double>& mu) {
  const int n = mu.spec.n;
  const int r = mu.order();
  const JetGroupElement<Dual> g = perturbed_identity(gen, n, r + 1);
  const SectionJet<Dual> moved = act_on_section(g, lift_to_dual(mu));
  const std::vector<Dual> flat = flatten(moved);
  Eigen::VectorXd out(static_cast<Eigen::Index>(flat.size()));
  for (std::size_t i = 0; i < flat.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = flat[i].eps;
  return out;
}

Eigen::VectorXd finite_difference_generator(const LieGeneratorIndex& gen,
                                            const SectionJet<double>& mu, double step) {
  const int n = mu.spec.n;
  const int r = mu.order();
  const auto flat_at = [&](double t) {
    JetMap<double> m = JetMap<double>::identity(n, r + 1);
    m.comp(gen.component).at(gen.alpha) += t;
    const JetGroupElement<double> g{std::move(m)};
    const std::vector<double> flat = flatten(act_on_section(g, mu));
    Eigen::VectorXd v(static_cast<Eigen::Index>(flat.size()));
    for (std::size_t i = 0; i < flat.size(); ++i)
      v(static_cast<Eigen::Index>(i)) = flat[i];
    return v;
  };
  return (flat_at(step) - flat_at(-step)) / (2.0 * step);
}

SectionJet<double> random_section(const StructureGroupSpec& spec, int r,
                                  std::uint64_t seed) {
  if (r < 0) throw std::invalid_argument("random_section: need r >= 0");
  Rng rng(seed);
  const ChartPoint<double> base = random_chart_point(spec, rng);
  const int n = spec.n;
  const int amb = spec.ambient_dim();
  const IndexTable& tab = index_table(n, r);

  std::vector<double> inv_fact(static_cast<std::size_t>(r) + 1, 1.0);
  for (int d = 1; d <= r; ++d)
    inv_fact[static_cast<std::size_t>(d)] =
        inv_fact[static_cast<std::size_t>(d) - 1] / static_cast<double>(d);

  std::vector<TruncatedPoly<double>> comps;
  comps.reserve(static_cast<std::size_t>(amb));
  for (int c = 0; c < amb; ++c) {
    TruncatedPoly<double> p(n, r);
    p[0] = base.coords[static_cast<std::size_t>(c)];
    for (std::size_t t = 1; t < tab.size(); ++t)
      p[t] = rng.uniform(-1.0, 1.0) * inv_fact[static_cast<std::size_t>(tab.degree_at(t))];
    comps.push_back(std::move(p));
  }

  if (spec.normalized_det()) {
    // Rescale degree by degree along the conformal direction: with lambda
    // homogeneous of degree k, det((1 + lambda) X) = det X + n lambda + O(>k),
    // so lambda = -e_k / n cancels the degree-k constraint error without
    // touching lower degrees.
    double sign = 1.0;
    if (spec.family == Family::scalars) {
      const SquareMat<double> x0 = chart_to_matrix(spec, base.coords);
      if (mat_det(x0) < 0.0) sign = -1.0;
    }
    for (int k = 1; k <= r; ++k) {
      const TruncatedPoly<double> det = mat_det(chart_to_matrix(spec, comps));
      TruncatedPoly<double> factor = TruncatedPoly<double>::constant(n, r, 1.0);
      const std::size_t b0 = tab.block_begin(k);
      const std::size_t b1 = tab.block_begin(k + 1);
      for (std::size_t t = b0; t < b1; ++t)
        factor[t] = -(sign * det[t]) / static_cast<double>(n);
      for (auto& comp : comps) comp = comp * factor;
    }
  }

  return SectionJet<double>(spec, JetMap<double>(std::move(comps)));
}

GeneratorMatrix build_generator_matrix(const StructureGroupSpec& spec, int r,
                                       const SectionJet<double>& basepoint) {
  if (basepoint.spec.family != spec.family || basepoint.spec.n != spec.n)
    throw std::invalid_argument("build_generator_matrix: basepoint spec mismatch");
  if (basepoint.order() != r)
    throw std::invalid_argument("build_generator_matrix: basepoint order mismatch");

  std::vector<LieGeneratorIndex> gens = lie_basis(spec.n, r + 1);
  const auto cols = static_cast<Eigen::Index>(gens.size());
  const auto rows =
      static_cast<Eigen::Index>(fiber_dimension(spec.n, r, spec.chart_dim()));

  Eigen::MatrixXd m(rows, cols);
  const auto fill = [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index j = begin; j < end; ++j)
      m.col(j) = infinitesimal_generator(gens[static_cast<std::size_t>(j)], basepoint)
                     .head(rows);
  };

  // Columns are independent; fan out on larger problems.
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<Eigen::Index>(std::min<unsigned>(hw, 8));
  if (cols < 32 || workers < 2) {
    fill(0, cols);
  } else {
    std::vector<std::thread> pool;
    const Eigen::Index chunk = (cols + workers - 1) / workers;
    for (Eigen::Index w = 0; w < workers; ++w) {
      const Eigen::Index begin = w * chunk;
      const Eigen::Index end = std::min(cols, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(fill, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  return GeneratorMatrix{std::move(m), basepoint, std::move(gens)};
}

RankResult numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("numerical_rank: rel_tol must be > 0");
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (m.rows() == 0 || m.cols() == 0) return {0, inf, false};

  const Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s(0);
  if (!(smax > 0.0)) return {0, inf, false};

  const double cutoff = rel_tol * smax;
  int rank = 0;
  while (rank < s.size() && s(rank) >= cutoff) ++rank;

  double gap = inf;
  if (rank > 0 && rank < s.size() && s(rank) > 0.0) gap = s(rank - 1) / s(rank);
  return {rank, gap, gap < 1e3};
}

namespace {

double rel_vector_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale = std::max({a.lpNorm<Eigen::Infinity>(),
                                 b.lpNorm<Eigen::Infinity>(), 1.0});
  return (a - b).lpNorm<Eigen::Infinity>() / scale;
}

}  // namespace

OrbitReport estimate_invariant_count(const StructureGroupSpec& spec, int r, int samples,
                                     std::uint64_t seed, double rel_tol) {
  if (samples < 3) throw std::invalid_argument("estimate_invariant_count: need samples >= 3");
  if (r < 0) throw std::invalid_argument("estimate_invariant_count: need r >= 0");

  const std::int64_t fiber = fiber_dimension(spec.n, r, spec.chart_dim());
  const std::int64_t group = jet_group_dimension(spec.n, r + 1);

  std::vector<RankResult> results;
  results.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const SectionJet<double> mu =
        random_section(spec, r, seed + static_cast<std::uint64_t>(s));
    const GeneratorMatrix g = build_generator_matrix(spec, r, mu);

    if (s == 0 && !g.generators.empty()) {
      // Independent derivative path: central differences must reproduce the
      // perturbation-scalar columns.
      Rng pick(seed ^ 0x9e3779b97f4a7c15ULL);
      const std::size_t checks = std::min<std::size_t>(10, g.generators.size());
      for (std::size_t c = 0; c < checks; ++c) {
        const auto j = static_cast<std::size_t>(pick.raw() % g.generators.size());
        const Eigen::VectorXd dual = infinitesimal_generator(g.generators[j], mu);
        const Eigen::VectorXd fd = finite_difference_generator(g.generators[j], mu);
        if (rel_vector_error(dual, fd) >= 1e-6) {
          std::ostringstream msg;
          msg << "generator column " << j
              << " disagrees between perturbation scalars and finite differences";
          throw std::logic_error(msg.str());
        }
      }
    }

    results.push_back(numerical_rank(g.mat, rel_tol));
  }

  int max_rank = 0;
  for (const auto& res : results) max_rank = std::max(max_rank, res.rank);
  int attained = 0;
  double gap = std::numeric_limits<double>::infinity();
  bool weak_gap = false;
  for (const auto& res : results) {
    if (res.rank != max_rank) continue;
    ++attained;
    gap = std::min(gap, res.gap);
    weak_gap = weak_gap || res.ambiguous;
  }

  OrbitReport rep;
  rep.spec = spec;
  rep.r = r;
  rep.fiber_dim = fiber;
  rep.group_dim = group;
  rep.rank = max_rank;
  rep.invariant_count = fiber - max_rank;
  rep.singular_gap = gap;
  rep.samples = samples;
  rep.seed = seed;
  rep.ambiguous = weak_gap || attained < 2;

  const std::int64_t bound = lower_bound(spec, r);
  if (bound >= 0 && rep.invariant_count < bound) {
    std::ostringstream msg;
    msg << "measured invariant count " << rep.invariant_count << " for "
        << family_name(spec.family) << " n=" << spec.n << " r=" << r
        << " fell below the proven bound " << bound;
    throw std::logic_error(msg.str());
  }
  return rep;
}

}  // namespace jetorbit
