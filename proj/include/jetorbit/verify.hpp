#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jetorbit/bounds.hpp"
#include "jetorbit/orbit.hpp"

namespace jetorbit {

/// One fixed orbit regression: the measured invariant count for (spec, r)
/// must equal `expected` with an unambiguous rank.
struct OrbitCheck {
  StructureGroupSpec spec;
  int r = 0;
  std::int64_t expected = 0;
};

/// The six fixed orbit regressions run by `verify`: the three metric cases
/// (including the n=2, r=2 cell where the count exceeds the bound by one),
/// two parallelization cases, and one volume-projective case.
const std::vector<OrbitCheck>& verification_orbit_checks();

struct VerificationReport {
  bool skip_orbit = false;
  int table_cells = 0;
  int table_ok = 0;
  int orbit_checks = 0;
  int orbit_ok = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  std::string summary() const;
};

/// Re-derive both embedded bound tables cell by cell, then (unless skipped)
/// run the fixed orbit regressions.
VerificationReport run_verification(bool skip_orbit, std::uint64_t seed = 42,
                                    int samples = 5, double rel_tol = 1e-9);

}  // namespace jetorbit
