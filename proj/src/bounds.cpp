#include "jetorbit/bounds.hpp"

#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "jetorbit/multi_index.hpp"

namespace jetorbit {

std::int64_t lower_bound(Family family, int n, int r) {
  if (n < 1) throw std::invalid_argument("lower_bound: need n >= 1");
  if (r < 0) throw std::invalid_argument("lower_bound: need r >= 0");
  const StructureGroupSpec spec{family, n};
  const std::int64_t d = spec.chart_dim();
  return d * binomial(n + r, n) - static_cast<std::int64_t>(n) * binomial(n + r + 1, n) + n;
}

std::optional<TableFormat> table_format_from_token(const std::string& token) {
  if (token == "markdown") return TableFormat::markdown;
  if (token == "csv") return TableFormat::csv;
  if (token == "json") return TableFormat::json;
  return std::nullopt;
}

BoundTable computed_table(Family family, int n_max, int r_max) {
  if (n_max < 1 || r_max < 1)
    throw std::invalid_argument("computed_table: need n_max >= 1 and r_max >= 1");
  BoundTable table;
  table.family = family;
  table.n_max = n_max;
  table.r_max = r_max;
  table.cells.resize(static_cast<std::size_t>(n_max) * r_max);
  for (int n = 1; n <= n_max; ++n)
    for (int r = 1; r <= r_max; ++r) {
      const std::int64_t value = lower_bound(family, n, r);
      table.at(n, r) = value < 0 ? std::nullopt : std::optional<std::int64_t>(value);
    }
  return table;
}

namespace {

constexpr std::int64_t kDash = -1;  // marks a dash in the frozen grids below

BoundTable make_reference(Family family, const std::int64_t (&grid)[6][5]) {
  BoundTable table;
  table.family = family;
  table.n_max = 6;
  table.r_max = 5;
  table.cells.resize(30);
  for (int n = 1; n <= 6; ++n)
    for (int r = 1; r <= 5; ++r) {
      const std::int64_t v = grid[n - 1][r - 1];
      table.at(n, r) = v == kDash ? std::nullopt : std::optional<std::int64_t>(v);
    }
  return table;
}

const BoundTable& orthogonal_reference() {
  static const std::int64_t grid[6][5] = {
      {0, 0, 0, 0, 0},
      {kDash, 0, 2, 5, 9},
      {kDash, 3, 18, 45, 87},
      {kDash, 14, 74, 200, 424},
      {kDash, 40, 215, 635, 1475},
      {kDash, 90, 510, 1644, 4164},
  };
  static const BoundTable table = make_reference(Family::orthogonal, grid);
  return table;
}

const BoundTable& conformal_reference() {
  static const std::int64_t grid[6][5] = {
      {kDash, kDash, kDash, kDash, kDash},
      {kDash, kDash, kDash, kDash, kDash},
      {kDash, kDash, kDash, 10, 31},
      {kDash, kDash, 39, 130, 298},
      {kDash, 19, 159, 509, 1223},
      {kDash, 62, 426, 1434, 3702},
  };
  static const BoundTable table = make_reference(Family::conformal, grid);
  return table;
}

bool is_dagger_cell(Family family, int n, int r) {
  return family == Family::orthogonal && n == 2 && r == 2;
}

constexpr const char* kDaggerNote = "exact count is 1";

}  // namespace

bool has_embedded_reference(Family family) {
  return family == Family::orthogonal || family == Family::conformal;
}

const BoundTable& embedded_reference_table(Family family) {
  switch (family) {
    case Family::orthogonal: return orthogonal_reference();
    case Family::conformal: return conformal_reference();
    default:
      throw std::invalid_argument("embedded_reference_table: no reference grid for " +
                                  family_name(family));
  }
}

std::vector<TableMismatch> verify_table(const BoundTable& reference) {
  std::vector<TableMismatch> out;
  for (int n = 1; n <= reference.n_max; ++n)
    for (int r = 1; r <= reference.r_max; ++r) {
      const std::int64_t value = lower_bound(reference.family, n, r);
      const std::optional<std::int64_t> computed =
          value < 0 ? std::nullopt : std::optional<std::int64_t>(value);
      if (computed != reference.at(n, r))
        out.push_back({reference.family, n, r, reference.at(n, r), computed});
    }
  return out;
}

TableVerification verify_embedded_tables() {
  TableVerification result;
  for (const Family family : {Family::orthogonal, Family::conformal}) {
    const BoundTable& table = embedded_reference_table(family);
    result.cells_checked += table.n_max * table.r_max;
    for (auto& miss : verify_table(table)) result.mismatches.push_back(miss);
  }
  return result;
}

namespace {

std::string cell_text(const std::optional<std::int64_t>& cell) {
  return cell ? std::to_string(*cell) : "-";
}

std::string render_markdown(const BoundTable& table) {
  std::ostringstream out;
  out << "| n \\ r |";
  for (int r = 1; r <= table.r_max; ++r) out << " " << r << " |";
  out << "\n|---|";
  for (int r = 1; r <= table.r_max; ++r) out << "---|";
  out << "\n";
  bool used_dagger = false;
  for (int n = 1; n <= table.n_max; ++n) {
    out << "| " << n << " |";
    for (int r = 1; r <= table.r_max; ++r) {
      out << " " << cell_text(table.at(n, r));
      if (is_dagger_cell(table.family, n, r)) {
        out << "†";
        used_dagger = true;
      }
      out << " |";
    }
    out << "\n";
  }
  if (used_dagger) out << "\n† (n=2, r=2): " << kDaggerNote << "\n";
  return out.str();
}

std::string render_csv(const BoundTable& table) {
  std::ostringstream out;
  out << "family,n,r,value\n";
  const std::string token = family_token(table.family);
  for (int n = 1; n <= table.n_max; ++n)
    for (int r = 1; r <= table.r_max; ++r) {
      const auto& cell = table.at(n, r);
      out << token << "," << n << "," << r << ",";
      if (cell) out << *cell;
      out << "\n";
    }
  return out.str();
}

std::string render_json(const BoundTable& table) {
  nlohmann::ordered_json j;
  j["family"] = family_token(table.family);
  j["n_max"] = table.n_max;
  j["r_max"] = table.r_max;
  j["cells"] = nlohmann::ordered_json::array();
  for (int n = 1; n <= table.n_max; ++n)
    for (int r = 1; r <= table.r_max; ++r) {
      nlohmann::ordered_json cell;
      cell["n"] = n;
      cell["r"] = r;
      const auto& value = table.at(n, r);
      if (value)
        cell["value"] = *value;
      else
        cell["value"] = nullptr;
      if (is_dagger_cell(table.family, n, r)) cell["note"] = kDaggerNote;
      j["cells"].push_back(cell);
    }
  return j.dump(2) + "\n";
}

}  // namespace

std::string render_table(Family family, int n_max, int r_max, TableFormat format) {
  const BoundTable table = computed_table(family, n_max, r_max);
  switch (format) {
    case TableFormat::markdown: return render_markdown(table);
    case TableFormat::csv: return render_csv(table);
    case TableFormat::json: return render_json(table);
  }
  throw std::logic_error("unreachable");
}

}  // namespace jetorbit
