// Snapshot layout (version 1), one record per line:
//
//   ulam-sketch 1
//   config <n_bound> <d> <k> <beta> <gamma> <lambda> <rho> <kappa> <seed> <coreset_block>
//   progress <items_seen> <peak_stored>
//   rng <mt19937_64 state>
//   coreset_rng <mt19937_64 state>
//   items <count>
//   <stream index> <symbols...>                 (count lines, ascending index)
//   buckets <count>
//   <resets> <size> <stream indices...>         (row-major over ell, p)
//   faraway <ring count>
//   <size> <stream indices...>
//   coreset_levels <count>
//   <size> {<stream index> <weight>}...
//   coreset_buffer <size> {<stream index> <weight>}...
//   end
//
// Reals are written in shortest round-trip form, so a reloaded sketch is
// bit-identical to the saved one.

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "ulam/error.hpp"
#include "ulam/streaming.hpp"

namespace ulam {

namespace {

constexpr const char* kMagic = "ulam-sketch";
constexpr int kVersion = 1;

std::string real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::istringstream next(const std::string& expected_tag) {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of snapshot, wanted '" + expected_tag + "'");
    ++line_no_;
    std::istringstream fields(line);
    if (!expected_tag.empty()) {
      std::string tag;
      fields >> tag;
      if (tag != expected_tag) fail("expected '" + expected_tag + "', found '" + tag + "'");
    }
    return fields;
  }

  std::string rest(std::istringstream& fields) {
    std::string text;
    std::getline(fields >> std::ws, text);
    return text;
  }

  [[noreturn]] void fail(const std::string& message) const {
    raise(ErrorKind::Parse, "snapshot line " + std::to_string(line_no_) + ": " + message);
  }

  template <class T>
  T read(std::istringstream& fields) {
    std::string token;
    if (!(fields >> token)) fail("missing field");
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) fail("bad number '" + token + "'");
    return value;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

void write_weighted(std::ostream& out, const std::vector<WeightedItem>& items) {
  out << items.size();
  for (const auto& w : items) out << ' ' << w.item->index << ' ' << real(w.weight);
  out << '\n';
}

}  // namespace

void save_snapshot(std::ostream& out, const StreamSketch& s) {
  const auto& c = s.config;
  out << kMagic << ' ' << kVersion << '\n';
  out << "config " << c.n_bound << ' ' << c.dimension << ' ' << c.k << ' ' << real(c.beta) << ' '
      << real(c.gamma) << ' ' << real(c.lambda) << ' ' << real(c.rho) << ' ' << real(c.kappa) << ' '
      << c.seed << ' ' << c.coreset_block << '\n';
  out << "progress " << s.items_seen << ' ' << s.peak_stored << '\n';
  out << "rng " << s.rng.state() << '\n';
  out << "coreset_rng " << s.coreset.rng().state() << '\n';

  std::map<std::uint64_t, const Permutation*> items;
  for (const auto& b : s.buckets) {
    for (const auto& m : b.members) items.emplace(m->index, &m->perm);
  }
  for (const auto& ring : s.faraway.rings()) {
    for (const auto& m : ring.members) items.emplace(m->index, &m->perm);
  }
  for (const auto& w : s.coreset.points()) items.emplace(w.item->index, &w.item->perm);
  out << "items " << items.size() << '\n';
  for (const auto& [index, perm] : items) out << index << ' ' << perm->to_string() << '\n';

  out << "buckets " << s.buckets.size() << '\n';
  for (const auto& b : s.buckets) {
    out << b.resets << ' ' << b.members.size();
    for (const auto& m : b.members) out << ' ' << m->index;
    out << '\n';
  }
  out << "faraway " << s.faraway.rings().size() << '\n';
  for (const auto& ring : s.faraway.rings()) {
    out << ring.members.size();
    for (const auto& m : ring.members) out << ' ' << m->index;
    out << '\n';
  }
  out << "coreset_levels " << s.coreset.levels().size() << '\n';
  for (const auto& level : s.coreset.levels()) write_weighted(out, level);
  out << "coreset_buffer ";
  write_weighted(out, s.coreset.buffer());
  out << "end\n";
}

StreamSketch load_snapshot(std::istream& in) {
  LineReader reader(in);
  {
    auto f = reader.next(kMagic);
    if (reader.read<int>(f) != kVersion) reader.fail("unsupported snapshot version");
  }
  StreamConfig c;
  {
    auto f = reader.next("config");
    c.n_bound = reader.read<std::size_t>(f);
    c.dimension = reader.read<std::size_t>(f);
    c.k = reader.read<std::size_t>(f);
    c.beta = reader.read<double>(f);
    c.gamma = reader.read<double>(f);
    c.lambda = reader.read<double>(f);
    c.rho = reader.read<double>(f);
    c.kappa = reader.read<double>(f);
    c.seed = reader.read<std::uint64_t>(f);
    c.coreset_block = reader.read<std::size_t>(f);
  }
  StreamSketch s = sketch_init(c);
  {
    auto f = reader.next("progress");
    s.items_seen = reader.read<std::uint64_t>(f);
    s.peak_stored = reader.read<std::uint64_t>(f);
  }
  {
    auto f = reader.next("rng");
    s.rng.set_state(reader.rest(f));
  }
  {
    auto f = reader.next("coreset_rng");
    s.coreset.rng().set_state(reader.rest(f));
  }

  std::map<std::uint64_t, ItemRef> items;
  {
    auto f = reader.next("items");
    const auto count = reader.read<std::size_t>(f);
    for (std::size_t i = 0; i < count; ++i) {
      auto line = reader.next("");
      const auto index = reader.read<std::uint64_t>(line);
      std::vector<Symbol> symbols;
      symbols.reserve(c.dimension);
      for (std::size_t j = 0; j < c.dimension; ++j) symbols.push_back(reader.read<Symbol>(line));
      items.emplace(index, std::make_shared<const StreamItem>(StreamItem{index, validate(std::move(symbols))}));
    }
  }
  auto lookup = [&](std::uint64_t index) -> const ItemRef& {
    auto it = items.find(index);
    if (it == items.end()) reader.fail("unknown item " + std::to_string(index));
    return it->second;
  };
  auto read_weighted = [&](std::istringstream& f) {
    std::vector<WeightedItem> out;
    const auto size = reader.read<std::size_t>(f);
    for (std::size_t i = 0; i < size; ++i) {
      const auto index = reader.read<std::uint64_t>(f);
      out.push_back({lookup(index), reader.read<double>(f)});
    }
    return out;
  };
  {
    auto f = reader.next("buckets");
    if (reader.read<std::size_t>(f) != s.buckets.size()) reader.fail("bucket grid does not match config");
    for (auto& b : s.buckets) {
      auto line = reader.next("");
      b.resets = reader.read<std::uint64_t>(line);
      const auto size = reader.read<std::size_t>(line);
      for (std::size_t i = 0; i < size; ++i) b.members.push_back(lookup(reader.read<std::uint64_t>(line)));
    }
  }
  {
    auto f = reader.next("faraway");
    auto& rings = s.faraway.mutable_rings();
    if (reader.read<std::size_t>(f) != rings.size()) reader.fail("ring count does not match config");
    for (auto& ring : rings) {
      auto line = reader.next("");
      const auto size = reader.read<std::size_t>(line);
      for (std::size_t i = 0; i < size; ++i) ring.members.push_back(lookup(reader.read<std::uint64_t>(line)));
    }
  }
  {
    auto f = reader.next("coreset_levels");
    const auto count = reader.read<std::size_t>(f);
    auto& levels = s.coreset.levels();
    levels.clear();
    for (std::size_t i = 0; i < count; ++i) {
      auto line = reader.next("");
      levels.push_back(read_weighted(line));
    }
  }
  {
    auto f = reader.next("coreset_buffer");
    s.coreset.buffer() = read_weighted(f);
  }
  reader.next("end");
  return s;
}

void save_snapshot_file(const std::string& path, const StreamSketch& sketch) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::Io, "cannot write " + path);
  save_snapshot(out, sketch);
  if (!out) raise(ErrorKind::Io, "write failed for " + path);
}

StreamSketch load_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::Io, "cannot open " + path);
  return load_snapshot(in);
}

}  // namespace ulam
