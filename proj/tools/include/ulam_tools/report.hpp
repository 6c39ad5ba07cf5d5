#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ulam::tools {

/// One algorithm run on one instance. Field order is the serialization order.
struct RunReport {
  std::string name;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  double p = 0.0;
  std::optional<double> objective;
  std::optional<double> oracle;
  std::string oracle_kind = "none";
  double wall_ms = 0.0;
  std::optional<std::uint64_t> peak_stored;
  std::optional<std::uint64_t> space_bound;
  std::string status = "ok";

  /// objective / oracle; 1 when both are zero. Absent without an oracle.
  std::optional<double> ratio() const;
};

std::string format_number(double v);

/// `key=value` pairs in field order; missing values print as `-`.
std::string to_structured(const RunReport& r);

/// Column-aligned table, header always present.
void print_table(std::ostream& out, const std::vector<RunReport>& rows);

}  // namespace ulam::tools
