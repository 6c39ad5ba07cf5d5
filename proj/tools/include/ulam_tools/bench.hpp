#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ulam/planted.hpp"
#include "ulam_tools/report.hpp"

namespace ulam::tools {

/// One suite line, e.g.
///   name=km algorithm=offline k=2 d=5 sizes=3,3 radius=1 p=0 seeds=1-25 oracle=brute
/// Algorithms: median, offline, stream, stream1. Oracles: brute, planted, none.
struct BenchEntry {
  std::string name;
  std::string algorithm = "offline";
  std::size_t k = 1;
  std::size_t d = 5;
  std::vector<std::size_t> sizes{6};
  std::size_t radius = 1;
  std::size_t outliers = 0;
  double p = 0.0;
  std::uint64_t seed_first = 1;
  std::uint64_t seed_last = 1;
  std::string oracle = "none";
  // Streaming overrides; zero keeps the library default.
  double beta = 0.0;
  double lambda = 0.0;
  double rho = 0.0;
  std::size_t coreset_block = 0;
  bool fallback = false;
  std::uint64_t budget = 100'000'000;
};

/// Blank lines and `#` comments are ignored. Throws ulam::Error(Parse).
std::vector<BenchEntry> parse_suite(std::istream& in);

PlantedSpec planted_spec(const BenchEntry& e, std::uint64_t seed);

/// Runs one seed of an entry. Library failures are caught and recorded in
/// the report status rather than thrown.
RunReport run_entry(const BenchEntry& e, std::uint64_t seed);

/// Runs every entry and seed, prints the table, one `ROW` line per run and a
/// `SUMMARY` ratio distribution per entry. Returns the number of failed rows.
std::size_t run_suite(const std::vector<BenchEntry>& suite, std::ostream& out);

}  // namespace ulam::tools
