#include <accx/algorithms.hpp>
#include <accx/cli.hpp>
#include <accx/fusion.hpp>
#include <accx/reference.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace accx::cli {

namespace {

using json = nlohmann::json;
using clock = std::chrono::steady_clock;

double since(clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); }

struct Globals {
  unsigned workers = 1;
  std::size_t threshold = kDefaultOverflowThreshold;
  std::string separators = "32,128";
  double alpha = 20.0;
  bool deterministic = false;
  std::uint64_t seed = 1;
  unsigned repeat = 1;
  bool json = false;
  bool csv = false;
};

struct ConvertArgs {
  std::string input, output;
  bool directed = false, weighted = false, reverse = false;
};

struct RunArgs {
  std::string algorithm, graph;
  bool directed = false;
  bool build_reverse = false;
  VertexId source = 0;
  std::optional<double> delta;
  std::uint64_t k = kDefaultK;
  double damping = 0.85;
  std::optional<double> epsilon;
  std::optional<std::uint32_t> iterations;
  std::uint32_t max_iterations = 100000;
  bool verify = false;
  std::string trace;
  std::string filter = "jit";
  std::string direction;
};

struct PlanArgs {
  std::string profile = "k40";
  std::string costs;
  std::string trace;
  std::string phases;
  std::string algorithm;
  std::string graph;
  std::string strategy = "selective";
  std::optional<std::uint64_t> override_ctas;
  bool directed = false;
  VertexId source = 0;
};

struct GenArgs {
  std::string kind, output;
  unsigned scale = 10;
  double edge_factor = 16;
  std::uint64_t vertices = 1000, edges = 5000;
  bool directed = false, reverse = false, text = false;
  std::string weights;  // "lo,hi"
  bool integer_weights = false;
};

Separators parse_separators(const std::string& s) {
  Separators seps;
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InvalidArgument("--separators expects SMALL,LARGE");
  try {
    seps.small_limit = std::stoull(s.substr(0, comma));
    seps.large_limit = std::stoull(s.substr(comma + 1));
  } catch (const std::logic_error&) {
    throw InvalidArgument("--separators expects two integers, got '" + s + "'");
  }
  seps.validate();
  return seps;
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    const double lo = std::stod(s.substr(0, comma)), hi = std::stod(s.substr(comma + 1));
    if (!(lo < hi)) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InvalidArgument("expected LO,HI with LO < HI, got '" + s + "'");
  }
}

EngineConfig engine_config(const Globals& g) {
  EngineConfig cfg;
  cfg.worker_count = g.workers;
  cfg.overflow_threshold = g.threshold;
  cfg.separators = parse_separators(g.separators);
  cfg.direction_alpha = g.alpha;
  cfg.deterministic = g.deterministic;
  cfg.validate();
  return cfg;
}

CsrGraph load_graph(const std::string& path, bool directed, bool build_reverse) {
  CsrGraph g = is_binary_graph_file(path) ? read_binary_file(path) : build_csr(load_edge_list_file(path, directed), false);
  if (build_reverse && g.directed()) g = g.with_reverse();
  return g;
}

// ---------------------------------------------------------------------------

int cmd_convert(const ConvertArgs& a, std::ostream& out) {
  auto el = load_edge_list_file(a.input, a.directed);
  if (a.weighted) el.weighted = true;
  const auto g = build_csr(el, a.reverse && a.directed);
  write_binary_file(g, a.output);
  out << "V=" << g.vertex_count() << " E=" << g.edge_count() << '\n';
  return kExitOk;
}

struct Outcome {
  RunStats stats;
  std::vector<JitTraceRow> jit_trace;
  std::optional<reference::Verdict> verdict;
};

bool integral_weights(const CsrGraph& g) {
  for (auto w : g.out_weight_array())
    if (w != std::floor(w)) return false;
  return true;
}

/// Runs the algorithm once; verifies when asked.
Outcome execute(const RunArgs& a, const CsrGraph& g, const EngineConfig& cfg, const Globals& gl, bool verify) {
  Outcome o;
  auto keep = [&](auto&& r) {
    o.stats = std::move(r.stats);
    o.jit_trace = std::move(r.jit_trace);
  };
  if (a.algorithm == "bfs") {
    auto r = bfs(g, a.source, cfg);
    if (verify) o.verdict = reference::compare_exact(r.values, reference::bfs(g, a.source));
    keep(r);
  } else if (a.algorithm == "sssp") {
    auto r = sssp(g, a.source, a.delta, cfg);
    if (verify) {
      const auto want = reference::dijkstra(g, a.source);
      if (integral_weights(g)) {
        o.verdict = reference::compare_exact(r.values, want);
      } else {
        double scale = 1.0;
        for (auto d : want)
          if (std::isfinite(d)) scale = std::max(scale, d);
        o.verdict = reference::compare_linf(r.values, want, 1e-9 * scale);
      }
    }
    keep(r);
  } else if (a.algorithm == "kcore") {
    auto r = kcore(g, a.k, cfg);
    if (verify) o.verdict = reference::compare_kcore(r.values, reference::kcore(g, a.k));
    keep(r);
  } else if (a.algorithm == "pagerank") {
    PageRankParams p;
    p.damping = a.damping;
    p.epsilon = a.epsilon;
    p.max_iterations = a.iterations.value_or(1000);
    auto r = pagerank(g, p, cfg);
    if (verify) {
      const double tol = std::max(1e-6, pagerank_tolerance(p.resolved_epsilon(g.vertex_count()), p.damping));
      o.verdict = reference::compare_l1(r.values, reference::pagerank(g, p.damping), tol);
    }
    keep(r);
  } else if (a.algorithm == "bp") {
    const auto priors = generate_priors(g.vertex_count(), gl.seed);
    bool usable = g.weighted();
    for (auto w : g.out_weight_array()) usable = usable && w > 0.0f && w < 1.0f;
    const CsrGraph lg = usable ? g : generate_likelihoods(g, gl.seed);
    const auto iters = a.iterations.value_or(kDefaultBpIterations);
    auto r = belief_propagation(lg, priors, iters, cfg);
    if (verify)
      o.verdict = reference::compare_linf(r.values, reference::belief_propagation(lg, priors, iters),
                                          cfg.deterministic ? 1e-12 : 1e-9);
    keep(r);
  } else {
    throw InvalidArgument("unknown algorithm '" + a.algorithm + "'");
  }
  return o;
}

int cmd_run(const RunArgs& a, const Globals& gl, std::ostream& out) {
  auto cfg = engine_config(gl);
  cfg.filter = parse_filter_mode(a.filter);
  cfg.max_iterations = a.max_iterations;
  if (!a.direction.empty()) cfg.force_direction = parse_direction(a.direction);

  const auto t_load = clock::now();
  const auto g = load_graph(a.graph, a.directed, a.build_reverse);
  const double load_seconds = since(t_load);

  const unsigned repeats = std::max(1u, gl.repeat);
  std::vector<double> times;
  Outcome last;
  for (unsigned i = 0; i < repeats; ++i) {
    const auto t0 = clock::now();
    auto o = execute(a, g, cfg, gl, false);
    times.push_back(since(t0));
    last = std::move(o);
  }
  if (a.verify) last.verdict = execute(a, g, cfg, gl, true).verdict;

  if (!a.trace.empty()) {
    std::ofstream f(a.trace);
    if (!f) throw Error("cannot write " + a.trace);
    f << "iteration,direction,filter,small,medium,large\n";
    for (const auto& r : last.stats.iterations)
      f << r.iteration << ',' << to_string(r.direction) << ',' << to_string(r.filter) << ',' << r.small << ','
        << r.medium << ',' << r.large << '\n';
  }

  double mean = 0, best = times.front();
  for (auto t : times) {
    mean += t;
    best = std::min(best, t);
  }
  mean /= static_cast<double>(times.size());

  if (gl.json) {
    json report{{"algorithm", a.algorithm},
                {"graph", {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"directed", g.directed()}}},
                {"config",
                 {{"workers", cfg.worker_count},
                  {"threshold", cfg.overflow_threshold},
                  {"separators", {cfg.separators.small_limit, cfg.separators.large_limit}},
                  {"alpha", cfg.direction_alpha},
                  {"deterministic", cfg.deterministic},
                  {"filter", to_string(cfg.filter)},
                  {"seed", gl.seed},
                  {"repeat", repeats}}},
                {"stats", json::parse(stats_json(last.stats))},
                {"load_seconds", load_seconds},
                {"wall_seconds", {{"mean", mean}, {"min", best}}}};
    if (last.verdict)
      report["verify"] = {{"pass", last.verdict->pass},
                          {"first_divergent", last.verdict->first_divergent ? json(*last.verdict->first_divergent)
                                                                            : json(nullptr)},
                          {"detail", last.verdict->detail}};
    out << report.dump(2) << '\n';
  } else if (gl.csv) {
    out << stats_csv(last.stats);
  } else {
    out << "algorithm: " << a.algorithm << '\n'
        << "graph: V=" << g.vertex_count() << " E=" << g.edge_count() << (g.directed() ? " directed" : " undirected")
        << '\n'
        << "iterations: " << last.stats.iterations.size() << (last.stats.converged ? "" : " (not converged)") << '\n'
        << "direction trace:";
    for (auto d : last.stats.direction_trace()) out << ' ' << to_string(d);
    out << "\nwall time: mean " << mean << " s, min " << best << " s over " << repeats << " run(s); load "
        << load_seconds << " s\n";
    if (last.verdict)
      {
      out << "verify: " << (last.verdict->pass ? "PASS" : "FAIL");
      if (!last.verdict->detail.empty()) out << " (" << last.verdict->detail << ")";
      out << '\n';
    }
  }
  return last.verdict && !last.verdict->pass ? kExitVerifyFailed : kExitOk;
}

std::vector<Direction> read_trace_directions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string header;
  std::getline(in, header);
  std::vector<std::string> cols;
  {
    std::istringstream hs(header);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  const auto it = std::find(cols.begin(), cols.end(), "direction");
  if (it == cols.end()) {
    // plain phase list
    std::ostringstream all;
    all << header << '\n' << in.rdbuf();
    return parse_phase_trace(all.str());
  }
  const auto col = static_cast<std::size_t>(it - cols.begin());
  std::vector<Direction> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string c;
    for (std::size_t i = 0; i <= col && std::getline(ls, c, ','); ++i) {}
    out.push_back(parse_direction(c));
  }
  return out;
}

int cmd_plan(const PlanArgs& a, const Globals& gl, std::ostream& out) {
  const auto profile = load_profile(a.profile);
  const auto costs = a.costs.empty() ? default_kernel_costs() : load_costs(a.costs);
  std::vector<Direction> phases;
  if (!a.trace.empty()) {
    phases = read_trace_directions(a.trace);
  } else if (!a.phases.empty()) {
    phases = parse_phase_trace(a.phases);
  } else if (!a.algorithm.empty()) {
    if (a.graph.empty()) throw InvalidArgument("--algorithm needs --graph");
    RunArgs r;
    r.algorithm = a.algorithm;
    r.source = a.source;
    const auto g = load_graph(a.graph, a.directed, true);
    phases = execute(r, g, engine_config(gl), gl, false).stats.direction_trace();
  } else {
    throw InvalidArgument("plan needs --trace, --phases or --algorithm");
  }
  if (phases.empty()) throw InvalidArgument("phase sequence is empty");
  const auto report = build_plan_report(phases, parse_fusion_strategy(a.strategy), profile, costs, a.override_ctas);
  out << plan_report_json(report) << '\n';
  return kExitOk;
}

int cmd_gen(const GenArgs& a, const Globals& gl, std::ostream& out) {
  EdgeList el = a.kind == "rmat" ? generate_rmat(a.scale, a.edge_factor, gl.seed, a.directed)
                                 : generate_uniform(a.vertices, a.edges, gl.seed, a.directed);
  CsrGraph g = build_csr(el, a.reverse && a.directed);
  if (!a.weights.empty()) {
    const auto [lo, hi] = parse_range(a.weights);
    g = generate_weights(g, gl.seed, lo, hi, a.integer_weights ? WeightKind::integer : WeightKind::real);
  }
  if (a.text) {
    std::ofstream f(a.output);
    if (!f) throw Error("cannot write " + a.output);
    f << "# " << (g.directed() ? "directed" : "undirected") << " V=" << g.vertex_count() << '\n';
    bool loop_copy = false;  // undirected self-loops are stored twice
    for (const auto& e : g.arcs()) {
      if (!g.directed() && e.src > e.dst) continue;
      if (!g.directed() && e.src == e.dst) {
        loop_copy = !loop_copy;
        if (!loop_copy) continue;
      }
      f << e.src << ' ' << e.dst;
      if (g.weighted()) f << ' ' << e.weight;
      f << '\n';
    }
  } else {
    write_binary_file(g, a.output);
  }
  out << "V=" << g.vertex_count() << " E=" << g.edge_count() << '\n';
  return kExitOk;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"accx: frontier-managed graph engine"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--workers", gl.workers, "Worker count")->check(CLI::PositiveNumber);
  app.add_option("--threshold", gl.threshold, "Thread-bin overflow threshold")->check(CLI::PositiveNumber);
  app.add_option("--separators", gl.separators, "Degree separators SMALL,LARGE");
  app.add_option("--alpha", gl.alpha, "Direction switch ratio")->check(CLI::PositiveNumber);
  app.add_flag("--deterministic", gl.deterministic, "Fixed combine order");
  app.add_option("--seed", gl.seed, "Seed for generated inputs");
  app.add_option("--repeat", gl.repeat, "Timed repetitions")->check(CLI::PositiveNumber);
  auto* json_flag = app.add_flag("--json", gl.json, "JSON report");
  app.add_flag("--csv", gl.csv, "Per-iteration CSV")->excludes(json_flag);
  app.fallthrough();

  ConvertArgs ca;
  auto* convert = app.add_subcommand("convert", "Edge list to binary CSR");
  convert->add_option("input", ca.input)->required();
  convert->add_option("output", ca.output)->required();
  convert->add_flag("--directed", ca.directed, "Treat edges as directed");
  convert->add_flag("--weighted", ca.weighted, "Mark the graph weighted even without a weight column");
  convert->add_flag("--reverse", ca.reverse, "Store transposed structure (directed graphs)");

  RunArgs ra;
  auto* runc = app.add_subcommand("run", "Run an algorithm");
  runc->add_option("algorithm", ra.algorithm)->required()->check(CLI::IsMember({"bfs", "sssp", "kcore", "pagerank", "bp"}));
  runc->add_option("graph", ra.graph)->required();
  runc->add_flag("--directed", ra.directed, "Text input is directed");
  runc->add_flag("--build-reverse", ra.build_reverse, "Build transposed structure after loading");
  runc->add_option("--source", ra.source);
  runc->add_option("--delta", ra.delta);
  runc->add_option("--k", ra.k);
  runc->add_option("--damping", ra.damping);
  runc->add_option("--epsilon", ra.epsilon);
  runc->add_option("--iterations", ra.iterations, "BP iterations / PageRank iteration cap");
  runc->add_option("--max-iterations", ra.max_iterations);
  runc->add_flag("--verify", ra.verify, "Check against the sequential oracle");
  runc->add_option("--trace", ra.trace, "Write per-iteration CSV");
  runc->add_option("--filter", ra.filter)->check(CLI::IsMember({"jit", "ballot", "batch"}));
  runc->add_option("--direction", ra.direction)->check(CLI::IsMember({"push", "pull"}));

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Kernel fusion plan");
  plan->add_option("--profile", pa.profile, "k40, k20 or a key=value file");
  plan->add_option("--costs", pa.costs, "Kernel register costs, key=value file");
  plan->add_option("--trace", pa.trace, "Run trace CSV or phase list file");
  plan->add_option("--phases", pa.phases, "Phases, e.g. push,pull*10,push");
  plan->add_option("--algorithm", pa.algorithm);
  plan->add_option("--graph", pa.graph);
  plan->add_flag("--directed", pa.directed);
  plan->add_option("--source", pa.source);
  plan->add_option("--strategy", pa.strategy)->check(CLI::IsMember({"none", "selective", "all"}));
  plan->add_option("--override-ctas,--override", pa.override_ctas, "Launched CTA count");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Synthetic graph");
  gen->add_option("kind", ga.kind)->required()->check(CLI::IsMember({"rmat", "uniform"}));
  gen->add_option("output", ga.output)->required();
  gen->add_option("--scale", ga.scale);
  gen->add_option("--edge-factor", ga.edge_factor);
  gen->add_option("--vertices", ga.vertices);
  gen->add_option("--edges", ga.edges);
  gen->add_flag("--directed", ga.directed);
  gen->add_flag("--reverse", ga.reverse);
  gen->add_flag("--text", ga.text, "Write an edge list instead of binary");
  gen->add_option("--weights", ga.weights, "Uniform weights LO,HI");
  gen->add_flag("--integer-weights", ga.integer_weights);

  std::vector<std::string> argv_store{"accx"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }
  try {
    if (*convert) return cmd_convert(ca, out);
    if (*runc) return cmd_run(ra, gl, out);
    if (*plan) return cmd_plan(pa, gl, out);
    if (*gen) return cmd_gen(ga, gl, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace accx::cli
