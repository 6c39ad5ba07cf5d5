#include "ulam_tools/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <map>
#include <sstream>

#include "ulam/clustering.hpp"
#include "ulam/error.hpp"
#include "ulam/streaming.hpp"

namespace ulam::tools {

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& text, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    raise(ErrorKind::Parse, "suite line " + std::to_string(line_no) + ": bad value for " + key + ": '" + text + "'");
  }
  return value;
}

std::vector<std::size_t> parse_sizes(const std::string& text, std::size_t line_no) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_number<std::size_t>("sizes", part, line_no));
  return out;
}

}  // namespace

std::vector<BenchEntry> parse_suite(std::istream& in) {
  std::vector<BenchEntry> suite;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    BenchEntry e;
    bool any = false;
    bool sizes_given = false;
    while (fields >> token) {
      any = true;
      const auto eq = token.find('=');
      if (eq == std::string::npos) {
        raise(ErrorKind::Parse, "suite line " + std::to_string(line_no) + ": expected key=value, got '" + token + "'");
      }
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      if (key == "name") {
        e.name = value;
      } else if (key == "algorithm") {
        if (value != "median" && value != "offline" && value != "stream" && value != "stream1") {
          raise(ErrorKind::Parse, "suite line " + std::to_string(line_no) + ": unknown algorithm '" + value + "'");
        }
        e.algorithm = value;
      } else if (key == "k") {
        e.k = parse_number<std::size_t>(key, value, line_no);
      } else if (key == "d") {
        e.d = parse_number<std::size_t>(key, value, line_no);
      } else if (key == "sizes") {
        e.sizes = parse_sizes(value, line_no);
        sizes_given = true;
      } else if (key == "radius") {
        e.radius = parse_number<std::size_t>(key, value, line_no);
      } else if (key == "outliers") {
        e.outliers = parse_number<std::size_t>(key, value, line_no);
      } else if (key == "p") {
        e.p = parse_number<double>(key, value, line_no);
      } else if (key == "seeds") {
        const auto dash = value.find('-');
        e.seed_first = parse_number<std::uint64_t>(key, value.substr(0, dash), line_no);
        e.seed_last = dash == std::string::npos ? e.seed_first
                                                : parse_number<std::uint64_t>(key, value.substr(dash + 1), line_no);
        if (e.seed_last < e.seed_first) {
          raise(ErrorKind::Parse, "suite line " + std::to_string(line_no) + ": empty seed range");
        }
      } else if (key == "oracle") {
        if (value != "brute" && value != "planted" && value != "none") {
          raise(ErrorKind::Parse, "suite line " + std::to_string(line_no) + ": unknown oracle '" + value + "'");
        }
        e.oracle = value;
      } else if (key == "beta") {
        e.beta = parse_number<double>(key, value, line_no);
      } else if (key == "lambda") {
        e.lambda = parse_number<double>(key, value, line_no);
      } else if (key == "rho") {
        e.rho = parse_number<double>(key, value, line_no);
      } else if (key == "block") {
        e.coreset_block = parse_number<std::size_t>(key, value, line_no);
      } else if (key == "fallback") {
        e.fallback = value == "1" || value == "true";
      } else if (key == "budget") {
        e.budget = parse_number<std::uint64_t>(key, value, line_no);
      } else {
        raise(ErrorKind::Parse, "suite line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      }
    }
    if (!any) continue;
    if (!sizes_given) e.sizes.assign(e.k, e.sizes.front());
    if (e.name.empty()) e.name = e.algorithm + "-" + std::to_string(suite.size() + 1);
    suite.push_back(std::move(e));
  }
  return suite;
}

PlantedSpec planted_spec(const BenchEntry& e, std::uint64_t seed) {
  PlantedSpec spec;
  spec.k = e.k;
  spec.d = e.d;
  spec.sizes = e.sizes;
  spec.radius = e.radius;
  spec.outlier_count = e.outliers;
  spec.seed = seed;
  return spec;
}

RunReport run_entry(const BenchEntry& e, std::uint64_t seed) {
  RunReport r;
  r.name = e.name;
  r.seed = seed;
  r.algorithm = e.algorithm;
  r.k = e.k;
  r.d = e.d;
  r.p = e.p;
  r.oracle_kind = e.oracle;
  try {
    const PlantedInstance inst = generate_planted(planted_spec(e, seed));
    const Dataset& data = inst.data;
    r.n = data.size();
    const EnumerationLimits limits{e.budget, e.budget};

    const auto start = std::chrono::steady_clock::now();
    MedianSet medians;
    if (e.algorithm == "median") {
      medians.push_back(approx_median(data, limits));
    } else if (e.algorithm == "offline") {
      medians = (e.p > 0.0 ? approx_k_median_outliers(data, e.k, e.p, limits) : approx_k_median(data, e.k, limits))
                    .medians;
    } else if (e.algorithm == "stream") {
      if (e.p > 0.0) raise(ErrorKind::InvalidArgument, "streaming has no outlier variant");
      StreamConfig c;
      c.n_bound = data.size();
      c.dimension = data.dimension();
      c.k = e.k;
      c.seed = seed;
      if (e.beta > 0.0) c.beta = e.beta;
      if (e.lambda > 0.0) c.lambda = e.lambda;
      if (e.rho > 0.0) c.rho = e.rho;
      c.coreset_block = e.coreset_block;
      StreamSketch sketch = sketch_init(c);
      for (const auto& x : data) sketch_update(sketch, x);
      QueryOptions q;
      q.tuple_budget = e.budget;
      q.fallback = e.fallback;
      medians = sketch_query(sketch, q).medians;
      r.peak_stored = sketch.peak_stored;
      r.space_bound = sketch.space_bound();
    } else {
      OneMedianConfig c;
      c.n_bound = data.size();
      c.dimension = data.dimension();
      c.seed = seed;
      if (e.lambda > 0.0) c.lambda = e.lambda;
      c.coreset_block = e.coreset_block;
      StreamingOneMedian sm(c);
      for (const auto& x : data) sm.update(x);
      medians.push_back(sm.query().median);
      r.peak_stored = sm.peak_stored();
      r.space_bound = sm.space_bound();
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.objective = static_cast<double>(objective_with_outliers(data, medians, e.p).objective);

    if (e.oracle == "brute") {
      r.oracle = static_cast<double>(brute_force_k_median(data, e.k, e.p, e.budget).objective);
    } else if (e.oracle == "planted") {
      r.oracle = static_cast<double>(objective_with_outliers(data, inst.centers, e.p).objective);
    }
  } catch (const Error& err) {
    r.status = "error:" + std::string(to_string(err.kind()));
  }
  return r;
}

std::size_t run_suite(const std::vector<BenchEntry>& suite, std::ostream& out) {
  std::vector<RunReport> rows;
  for (const auto& e : suite) {
    for (std::uint64_t s = e.seed_first; s <= e.seed_last; ++s) rows.push_back(run_entry(e, s));
  }
  print_table(out, rows);
  std::size_t failed = 0;
  for (const auto& r : rows) {
    out << "ROW " << to_structured(r) << '\n';
    if (r.status != "ok") ++failed;
  }
  // Ratio distribution per entry, in suite order.
  for (const auto& e : suite) {
    std::vector<double> ratios;
    for (const auto& r : rows) {
      if (r.name == e.name && r.ratio()) ratios.push_back(*r.ratio());
    }
    if (ratios.empty()) continue;
    std::sort(ratios.begin(), ratios.end());
    out << "SUMMARY name=" << e.name << " runs=" << ratios.size() << " min=" << format_number(ratios.front())
        << " median=" << format_number(ratios[ratios.size() / 2]) << " max=" << format_number(ratios.back()) << '\n';
  }
  return failed;
}

}  // namespace ulam::tools
