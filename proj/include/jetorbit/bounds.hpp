#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jetorbit/chart.hpp"

namespace jetorbit {

/// Closed-form lower bound on the number of functionally independent scalar
/// differential invariants of order r:
///   (n^2 - m) * C(n+r, n) - n * C(n+r+1, n) + n
/// i.e. fiber dimension minus acting-group dimension.  Exact 64-bit integer
/// arithmetic; negative values mean "no information" and render as a dash.
std::int64_t lower_bound(Family family, int n, int r);
inline std::int64_t lower_bound(const StructureGroupSpec& spec, int r) {
  return lower_bound(spec.family, spec.n, r);
}

enum class TableFormat { markdown, csv, json };
std::optional<TableFormat> table_format_from_token(const std::string& token);

/// Grid of bound values for n = 1..n_max, r = 1..r_max; nullopt encodes a
/// negative (uninformative) cell.
struct BoundTable {
  Family family = Family::orthogonal;
  int n_max = 6;
  int r_max = 5;
  std::vector<std::optional<std::int64_t>> cells;

  std::optional<std::int64_t>& at(int n, int r) {
    return cells[static_cast<std::size_t>((n - 1) * r_max + (r - 1))];
  }
  const std::optional<std::int64_t>& at(int n, int r) const {
    return cells[static_cast<std::size_t>((n - 1) * r_max + (r - 1))];
  }
};

BoundTable computed_table(Family family, int n_max, int r_max);

/// Frozen 6x5 reference grids for the orthogonal and conformal families.
bool has_embedded_reference(Family family);
const BoundTable& embedded_reference_table(Family family);

struct TableMismatch {
  Family family = Family::orthogonal;
  int n = 0;
  int r = 0;
  std::optional<std::int64_t> expected;
  std::optional<std::int64_t> computed;
};

/// Recompute every cell of `reference` and report the cells that differ.
std::vector<TableMismatch> verify_table(const BoundTable& reference);

struct TableVerification {
  int cells_checked = 0;
  std::vector<TableMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Check both embedded reference grids (60 cells) against the formula.
TableVerification verify_embedded_tables();

/// Render the computed grid.  markdown mimics the reference layout (dash for
/// negative cells, dagger note on the orthogonal n=2, r=2 cell, whose exact
/// invariant count is 1 although the bound is 0); csv uses the header
/// family,n,r,value with empty values for dashes; json mirrors the grid with
/// null cells.
std::string render_table(Family family, int n_max, int r_max, TableFormat format);

}  // namespace jetorbit
