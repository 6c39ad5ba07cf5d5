#include "ulam/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>

#include "ulam/error.hpp"

namespace ulam {

namespace {

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::vector<std::uint64_t> parse_integers(const std::string& line, std::size_t line_number) {
  std::vector<std::uint64_t> values;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    std::uint64_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t' && *next != '\r')) {
      raise(ErrorKind::Parse, "line " + std::to_string(line_number) + ": malformed token near '" +
                                  std::string(p, std::min<std::size_t>(end - p, 16)) + "'");
    }
    values.push_back(v);
    p = next;
  }
  return values;
}

}  // namespace

Dataset::Dataset(std::vector<Permutation> points) : points_(std::move(points)) {
  if (points_.empty()) raise(ErrorKind::EmptyDataset, "dataset has no points");
  const std::size_t d = points_.front().dimension();
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].dimension() != d) {
      raise(ErrorKind::DimensionMismatch, "point " + std::to_string(i) + " has dimension " +
                                              std::to_string(points_[i].dimension()) +
                                              ", expected " + std::to_string(d));
    }
  }
}

Permutation parse_permutation_line(const std::string& line, std::size_t line_number) {
  const auto values = parse_integers(line, line_number);
  std::vector<Symbol> symbols;
  symbols.reserve(values.size());
  for (auto v : values) {
    if (v > std::numeric_limits<Symbol>::max()) {
      raise(ErrorKind::Parse, "line " + std::to_string(line_number) + ": symbol out of range");
    }
    symbols.push_back(static_cast<Symbol>(v));
  }
  try {
    return validate(std::move(symbols));
  } catch (const Error& e) {
    raise(ErrorKind::Parse, "line " + std::to_string(line_number) + ": " + e.what());
  }
}

PermutationReader::PermutationReader(std::istream& in, bool expect_header) : in_(in) {
  if (!expect_header) return;
  std::string line;
  if (!next_nonblank(line)) raise(ErrorKind::Parse, "missing 'd n' header");
  const auto header = parse_integers(line, line_number_);
  if (header.size() != 2 || header[0] == 0) {
    raise(ErrorKind::Parse, "line " + std::to_string(line_number_) + ": expected header 'd n'");
  }
  dimension_ = static_cast<std::size_t>(header[0]);
  declared_count_ = static_cast<std::size_t>(header[1]);
}

bool PermutationReader::next_nonblank(std::string& line) {
  while (std::getline(in_, line)) {
    ++line_number_;
    if (!is_blank(line)) return true;
  }
  return false;
}

std::optional<Permutation> PermutationReader::next() {
  std::string line;
  if (!next_nonblank(line)) {
    if (declared_count_ && delivered_ != *declared_count_) {
      raise(ErrorKind::Parse, "header declares " + std::to_string(*declared_count_) +
                                  " permutations, found " + std::to_string(delivered_));
    }
    return std::nullopt;
  }
  if (declared_count_ && delivered_ == *declared_count_) {
    raise(ErrorKind::Parse, "line " + std::to_string(line_number_) + ": more than " +
                                std::to_string(*declared_count_) + " permutations");
  }
  Permutation p = parse_permutation_line(line, line_number_);
  if (!dimension_) dimension_ = p.dimension();
  if (p.dimension() != *dimension_) {
    raise(ErrorKind::Parse, "line " + std::to_string(line_number_) + ": dimension " +
                                std::to_string(p.dimension()) + ", expected " +
                                std::to_string(*dimension_));
  }
  ++delivered_;
  return p;
}

Dataset read_dataset(std::istream& in) {
  PermutationReader reader(in, true);
  std::vector<Permutation> points;
  points.reserve(*reader.declared_count());
  while (auto p = reader.next()) points.push_back(std::move(*p));
  if (points.empty()) raise(ErrorKind::EmptyDataset, "dataset declares zero permutations");
  return Dataset(std::move(points));
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Io, "cannot open " + path);
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  out << data.dimension() << ' ' << data.size() << '\n';
  for (const auto& p : data) out << p.to_string() << '\n';
}

void write_dataset_file(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::Io, "cannot write " + path);
  write_dataset(out, data);
  if (!out) raise(ErrorKind::Io, "write failed for " + path);
}

Permutation read_permutation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Io, "cannot open " + path);
  PermutationReader reader(in, false);
  auto p = reader.next();
  if (!p) raise(ErrorKind::Parse, path + ": no permutation found");
  if (reader.next()) raise(ErrorKind::Parse, path + ": expected a single permutation line");
  return std::move(*p);
}

}  // namespace ulam
