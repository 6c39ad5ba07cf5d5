#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ulam/permutation.hpp"

namespace ulam {

/// Ordered multiset of permutations sharing one dimension. Never empty.
class Dataset {
 public:
  explicit Dataset(std::vector<Permutation> points);

  std::size_t dimension() const noexcept { return points_.front().dimension(); }
  std::size_t size() const noexcept { return points_.size(); }
  const Permutation& operator[](std::size_t i) const noexcept { return points_[i]; }
  const std::vector<Permutation>& points() const noexcept { return points_; }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Permutation> points_;
};

// Text formats. A permutation is one line of space-separated 1-based
// integers. A dataset file is a `d n` header line followed by n permutation
// lines. Blank lines are skipped; errors carry 1-based line numbers.

Permutation parse_permutation_line(const std::string& line, std::size_t line_number);

Dataset read_dataset(std::istream& in);
Dataset read_dataset_file(const std::string& path);
void write_dataset(std::ostream& out, const Dataset& data);
void write_dataset_file(const std::string& path, const Dataset& data);

/// Reads exactly one permutation line from a file.
Permutation read_permutation_file(const std::string& path);

/// Incremental reader for stream mode: yields one permutation per call and
/// never buffers more than the current line.
class PermutationReader {
 public:
  /// With `expect_header`, the first non-blank line must be `d n`; the reader
  /// then checks that exactly n permutations of dimension d follow.
  PermutationReader(std::istream& in, bool expect_header);

  std::optional<Permutation> next();

  /// Known after the header (file mode) or after the first line (pipe mode).
  std::optional<std::size_t> dimension() const noexcept { return dimension_; }
  std::optional<std::size_t> declared_count() const noexcept { return declared_count_; }
  std::size_t delivered() const noexcept { return delivered_; }

 private:
  bool next_nonblank(std::string& line);

  std::istream& in_;
  std::size_t line_number_ = 0;
  std::size_t delivered_ = 0;
  std::optional<std::size_t> dimension_;
  std::optional<std::size_t> declared_count_;
};

}  // namespace ulam
