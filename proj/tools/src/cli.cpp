#include "ulam_tools/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <memory>
#include <optional>

#include "ulam/clustering.hpp"
#include "ulam/dataset.hpp"
#include "ulam/error.hpp"
#include "ulam/planted.hpp"
#include "ulam/streaming.hpp"
#include "ulam_tools/bench.hpp"
#include "ulam_tools/report.hpp"

#ifndef ULAM_DEFAULT_SUITE
#define ULAM_DEFAULT_SUITE ""
#endif

namespace ulam::tools {

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded:
      return kBudget;
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidArgument:
      return kUsage;
    default:
      return kData;
  }
}

struct KMedianOptions {
  std::string input;
  std::size_t k = 1;
  double p = 0.0;
  std::string mode = "offline";
  std::uint64_t seed = 0;
  std::size_t n_bound = 0;
  std::optional<double> beta, lambda, rho;
  std::size_t coreset_size = 0;
  bool oracle = false;
  bool fallback = false;
  std::uint64_t budget = 100'000'000;
  std::string snapshot_in, snapshot_out;
};

void print_medians(std::ostream& out, const std::vector<Permutation>& medians) {
  for (const auto& m : medians) out << m.to_string() << '\n';
}

int kmedian_offline(const KMedianOptions& o, std::istream& in, std::ostream& out) {
  const Dataset data = o.input == "-" ? Dataset([&] {
    std::vector<Permutation> pts;
    PermutationReader reader(in, false);
    while (auto p = reader.next()) pts.push_back(std::move(*p));
    if (pts.empty()) raise(ErrorKind::EmptyDataset, "no permutations on standard input");
    return pts;
  }())
                                     : read_dataset_file(o.input);
  RunReport r;
  r.name = o.input;
  r.seed = o.seed;
  r.algorithm = "offline";
  r.n = data.size();
  r.d = data.dimension();
  r.k = o.k;
  r.p = o.p;
  const EnumerationLimits limits{o.budget, o.budget};
  const auto start = std::chrono::steady_clock::now();
  const ClusteringResult res =
      o.p > 0.0 ? approx_k_median_outliers(data, o.k, o.p, limits) : approx_k_median(data, o.k, limits);
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  r.objective = static_cast<double>(res.objective);
  if (o.oracle) {
    r.oracle_kind = "brute";
    r.oracle = static_cast<double>(brute_force_k_median(data, o.k, o.p, o.budget).objective);
  }
  print_medians(out, res.medians);
  out << "objective " << res.objective << '\n';
  if (o.p > 0.0) {
    out << "outliers";
    for (auto i : res.outliers) out << ' ' << i;
    out << '\n';
  }
  out << "report " << to_structured(r) << '\n';
  return kOk;
}

int kmedian_stream(const KMedianOptions& o, std::istream& in, std::ostream& out) {
  if (o.p > 0.0) raise(ErrorKind::InvalidArgument, "--p is only supported in offline mode");
  std::optional<StreamSketch> sketch;
  if (!o.snapshot_in.empty()) sketch = load_snapshot_file(o.snapshot_in);

  std::unique_ptr<std::ifstream> file;
  std::istream* source = nullptr;
  if (o.input == "-") {
    source = &in;
  } else if (!o.input.empty()) {
    file = std::make_unique<std::ifstream>(o.input);
    if (!*file) raise(ErrorKind::Io, "cannot open " + o.input);
    source = file.get();
  } else if (!sketch) {
    raise(ErrorKind::InvalidArgument, "stream mode needs an input or --snapshot-in");
  }

  std::optional<PermutationReader> reader;
  if (source) reader.emplace(*source, o.input != "-");
  std::optional<Permutation> first;
  if (reader) first = reader->next();

  if (!sketch) {
    StreamConfig c;
    c.k = o.k;
    c.seed = o.seed;
    c.n_bound = o.n_bound ? o.n_bound : reader->declared_count().value_or(0);
    if (c.n_bound == 0) raise(ErrorKind::InvalidArgument, "pipe mode needs --n-bound");
    if (!first) raise(ErrorKind::EmptyDataset, "stream is empty");
    c.dimension = first->dimension();
    if (o.beta) c.beta = *o.beta;
    if (o.lambda) c.lambda = *o.lambda;
    if (o.rho) c.rho = *o.rho;
    c.coreset_block = o.coreset_size;
    sketch = sketch_init(c);
  }

  // The oracle needs the stream again; keep a copy outside the sketch.
  std::vector<Permutation> retained;
  const auto start = std::chrono::steady_clock::now();
  for (auto x = std::move(first); x; x = reader->next()) {
    if (o.oracle) retained.push_back(*x);
    sketch_update(*sketch, std::move(*x));
  }
  QueryOptions q;
  q.tuple_budget = o.budget;
  q.fallback = o.fallback;
  const StreamResult res = sketch_query(*sketch, q);
  const double wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!o.snapshot_out.empty()) save_snapshot_file(o.snapshot_out, *sketch);

  RunReport r;
  r.name = o.input.empty() ? o.snapshot_in : o.input;
  r.seed = sketch->config.seed;
  r.algorithm = "stream";
  r.n = sketch->items_seen;
  r.d = sketch->config.dimension;
  r.k = sketch->config.k;
  r.wall_ms = wall;
  r.objective = res.weighted_objective;
  r.peak_stored = sketch->peak_stored;
  r.space_bound = sketch->space_bound();

  print_medians(out, res.medians);
  out << "objective " << format_number(res.weighted_objective) << '\n';
  if (o.oracle) {
    if (retained.empty()) raise(ErrorKind::InvalidArgument, "--oracle needs the stream input");
    const Dataset data(std::move(retained));
    const auto exact = objective(data, res.medians);
    out << "exact_objective " << exact << '\n';
    r.objective = static_cast<double>(exact);
    r.oracle_kind = "brute";
    r.oracle = static_cast<double>(brute_force_k_median(data, r.k, 0.0, o.budget).objective);
  }
  out << "candidates " << res.candidate_count << " sample " << res.sample_size << " faraway " << res.faraway_size
      << " coreset " << res.coreset_size << '\n';
  if (res.reconstruction_mode == ReconstructionMode::Neighbourhood || res.selection_mode == SelectionMode::Greedy) {
    out << "fallback reconstruction="
        << (res.reconstruction_mode == ReconstructionMode::Neighbourhood ? "neighbourhood" : "exhaustive")
        << " selection=" << (res.selection_mode == SelectionMode::Greedy ? "greedy" : "exhaustive") << '\n';
  }
  out << "report " << to_structured(r) << '\n';
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ulam-metric permutation clustering"};
  app.require_subcommand(1);

  std::string dist_x, dist_y;
  auto* dist = app.add_subcommand("dist", "Ulam distance between two permutation files");
  dist->add_option("x", dist_x)->required();
  dist->add_option("y", dist_y)->required();

  PlantedSpec spec;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a planted dataset and its .truth sidecar");
  gen->add_option("--k", spec.k, "clusters")->default_val(1);
  gen->add_option("--d", spec.d, "dimension")->required();
  gen->add_option("--sizes", spec.sizes, "points per cluster, comma separated")->delimiter(',')->required();
  gen->add_option("--radius", spec.radius, "character moves per point")->default_val(0);
  gen->add_option("--outliers", spec.outlier_count, "uniform random outliers")->default_val(0);
  gen->add_option("--seed", spec.seed)->default_val(0);
  gen->add_option("--out", gen_out, "output path")->required();

  KMedianOptions km;
  auto* kmedian = app.add_subcommand("kmedian", "Cluster a dataset file (or - for stdin)");
  kmedian->add_option("input", km.input, "dataset file, or - for headerless stdin");
  kmedian->add_option("--k", km.k)->default_val(1);
  kmedian->add_option("--p", km.p, "outlier fraction")->default_val(0.0)->check(CLI::Range(0.0, 1.0));
  kmedian->add_option("--mode", km.mode)->default_val("offline")->check(CLI::IsMember({"offline", "stream"}));
  kmedian->add_option("--seed", km.seed)->default_val(0);
  kmedian->add_option("--n-bound", km.n_bound, "stream length bound");
  kmedian->add_option("--beta", km.beta);
  kmedian->add_option("--lambda", km.lambda);
  kmedian->add_option("--rho", km.rho);
  kmedian->add_option("--coreset-size", km.coreset_size, "merge-and-reduce block size");
  kmedian->add_flag("--oracle", km.oracle, "also run the brute-force optimum");
  kmedian->add_flag("--fallback", km.fallback, "greedy/neighbourhood fallback when a budget is exceeded");
  kmedian->add_option("--budget", km.budget)->default_val(100'000'000);
  kmedian->add_option("--snapshot-out", km.snapshot_out);
  kmedian->add_option("--snapshot-in", km.snapshot_in);

  std::string suite_path = ULAM_DEFAULT_SUITE;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("suite", suite_path, "suite file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (dist->parsed()) {
      out << ulam_distance(read_permutation_file(dist_x), read_permutation_file(dist_y)) << '\n';
      return kOk;
    }
    if (gen->parsed()) {
      spec.k = std::max(spec.k, spec.sizes.size());
      const PlantedInstance inst = generate_planted(spec);
      write_dataset_file(gen_out, inst.data);
      write_dataset_file(gen_out + ".truth", Dataset(inst.centers));
      return kOk;
    }
    if (kmedian->parsed()) {
      if (km.mode == "offline") {
        if (km.input.empty()) raise(ErrorKind::InvalidArgument, "offline mode needs an input file");
        if (!km.snapshot_in.empty() || !km.snapshot_out.empty()) {
          raise(ErrorKind::InvalidArgument, "snapshots apply to stream mode only");
        }
        return kmedian_offline(km, in, out);
      }
      return kmedian_stream(km, in, out);
    }
    std::ifstream file(suite_path);
    if (!file) raise(ErrorKind::Io, "cannot open suite " + suite_path);
    return run_suite(parse_suite(file), out) == 0 ? kOk : kData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

}  // namespace ulam::tools
