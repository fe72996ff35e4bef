#pragma once

#include <cmath>

#include <json.hpp>

#include "jetorbit/bounds.hpp"
#include "jetorbit/orbit.hpp"

namespace jetorbit {

/// Printed with every orbit report: the measured count is an orbit-dimension
/// statement, and equating it with the number of functionally independent
/// invariants rests on the maximal-orbit stratum being a manifold.
inline constexpr const char* kInvariantCountCaveat =
    "invariant_count = fiber_dim - max generic orbit rank; reading it as the number "
    "of functionally independent differential invariants assumes the maximal-orbit "
    "stratum is a manifold";

/// Stable-field-order JSON for CLI output and ledger lines.  An infinite
/// singular gap (clean full-rank cut) serializes as null.
inline nlohmann::ordered_json orbit_report_json(const OrbitReport& rep) {
  nlohmann::ordered_json j;
  j["family"] = family_token(rep.spec.family);
  j["n"] = rep.spec.n;
  j["r"] = rep.r;
  j["fiber_dim"] = rep.fiber_dim;
  j["group_dim"] = rep.group_dim;
  j["rank"] = rep.rank;
  j["invariant_count"] = rep.invariant_count;
  j["bound"] = lower_bound(rep.spec, rep.r);
  if (std::isfinite(rep.singular_gap))
    j["singular_gap"] = rep.singular_gap;
  else
    j["singular_gap"] = nullptr;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["ambiguous"] = rep.ambiguous;
  j["caveat"] = kInvariantCountCaveat;
  return j;
}

}  // namespace jetorbit
