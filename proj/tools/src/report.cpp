#include "ulam_tools/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <type_traits>
#include <sstream>

namespace ulam::tools {

std::optional<double> RunReport::ratio() const {
  if (!objective || !oracle) return std::nullopt;
  if (*oracle == 0.0) return *objective == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return *objective / *oracle;
}

std::string format_number(double v) {
  // Integers print without a fraction; everything else with 6 significant
  // digits so reports stay diff-friendly.
  if (v == static_cast<double>(static_cast<long long>(v)) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

namespace {

template <class T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "-";
  if constexpr (std::is_floating_point_v<T>) {
    return format_number(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

std::vector<std::string> cells(const RunReport& r) {
  return {r.name,
          std::to_string(r.seed),
          r.algorithm,
          std::to_string(r.n),
          std::to_string(r.d),
          std::to_string(r.k),
          format_number(r.p),
          opt(r.objective),
          opt(r.oracle),
          r.oracle_kind,
          r.ratio() ? fixed(*r.ratio(), 4) : "-",
          fixed(r.wall_ms, 1),
          opt(r.peak_stored),
          opt(r.space_bound),
          r.status};
}

constexpr std::array<const char*, 15> kColumns = {"name",   "seed",   "algorithm", "n",      "d",
                                                  "k",      "p",      "objective", "oracle", "oracle_kind",
                                                  "ratio",  "wall_ms", "peak_stored", "space_bound", "status"};

}  // namespace

std::string to_structured(const RunReport& r) {
  const auto c = cells(r);
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i) out += ' ';
    out += kColumns[i];
    out += '=';
    out += c[i];
  }
  return out;
}

void print_table(std::ostream& out, const std::vector<RunReport>& rows) {
  std::vector<std::vector<std::string>> grid;
  grid.emplace_back(kColumns.begin(), kColumns.end());
  for (const auto& r : rows) grid.push_back(cells(r));
  std::vector<std::size_t> width(kColumns.size(), 0);
  for (const auto& row : grid) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
    }
    out << line << '\n';
  }
}

}  // namespace ulam::tools
