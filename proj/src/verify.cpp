#include "jetorbit/verify.hpp"

#include <sstream>

namespace jetorbit {

const std::vector<OrbitCheck>& verification_orbit_checks() {
  static const std::vector<OrbitCheck> checks = {
      {{Family::orthogonal, 2}, 2, 1},  // count exceeds the bound (0) by one
      {{Family::orthogonal, 2}, 3, 2},
      {{Family::orthogonal, 3}, 2, 3},
      {{Family::trivial, 2}, 1, 2},
      {{Family::trivial, 2}, 2, 6},
      {{Family::scalars, 2}, 3, 2},
  };
  return checks;
}

std::string VerificationReport::summary() const {
  std::ostringstream out;
  out << table_ok << "/" << table_cells << " table cells";
  if (!skip_orbit) out << ", " << orbit_ok << "/" << orbit_checks << " orbit checks";
  out << ": " << (passed() ? "PASS" : "FAIL");
  return out.str();
}

VerificationReport run_verification(bool skip_orbit, std::uint64_t seed, int samples,
                                    double rel_tol) {
  VerificationReport report;
  report.skip_orbit = skip_orbit;

  const TableVerification tables = verify_embedded_tables();
  report.table_cells = tables.cells_checked;
  report.table_ok = tables.cells_checked - static_cast<int>(tables.mismatches.size());
  for (const auto& miss : tables.mismatches) {
    std::ostringstream line;
    line << "table cell " << family_name(miss.family) << " n=" << miss.n
         << " r=" << miss.r << ": expected "
         << (miss.expected ? std::to_string(*miss.expected) : "-") << ", computed "
         << (miss.computed ? std::to_string(*miss.computed) : "-");
    report.failures.push_back(line.str());
  }

  if (skip_orbit) return report;

  for (const auto& check : verification_orbit_checks()) {
    ++report.orbit_checks;
    std::ostringstream label;
    label << "orbit " << family_name(check.spec.family) << " n=" << check.spec.n
          << " r=" << check.r;
    try {
      const OrbitReport rep =
          estimate_invariant_count(check.spec, check.r, samples, seed, rel_tol);
      if (rep.invariant_count == check.expected && !rep.ambiguous) {
        ++report.orbit_ok;
      } else if (rep.invariant_count != check.expected) {
        std::ostringstream line;
        line << label.str() << ": expected count " << check.expected << ", measured "
             << rep.invariant_count;
        report.failures.push_back(line.str());
      } else {
        report.failures.push_back(label.str() + ": rank measurement is ambiguous");
      }
    } catch (const std::exception& err) {
      report.failures.push_back(label.str() + ": " + err.what());
    }
  }
  return report;
}

}  // namespace jetorbit
