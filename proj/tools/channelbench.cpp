#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "channelbench/cacheline.hpp"
#include "channelbench/channel_model.hpp"
#include "channelbench/error.hpp"
#include "channelbench/gap.hpp"
#include "channelbench/graph.hpp"
#include "channelbench/kernels.hpp"
#include "channelbench/microbench.hpp"
#include "channelbench/report.hpp"

namespace cb = channelbench;

namespace {

std::uint32_t default_threads() {
  if (const char* env = std::getenv("CHANNELBENCH_THREADS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v > 0) return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
    }
    throw cb::Error(cb::Errc::config, fmt::format("CHANNELBENCH_THREADS='{}' is not a positive integer", env));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::uint32_t> powers_of_two_up_to(std::uint32_t max) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 1; t <= max; t *= 2) out.push_back(t);
  if (out.back() != max) out.push_back(max);
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw cb::Error(cb::Errc::io, "cannot write " + path);
  out << text << '\n';
}

cb::Schedule parse_schedule(const std::string& s) {
  if (s == "static") return cb::Schedule::static_blocks;
  if (s == "balanced") return cb::Schedule::degree_balanced;
  throw cb::Error(cb::Errc::config, "unknown schedule '" + s + "'");
}

struct PrepArgs {
  std::string input, output, format = "auto";
  bool keep_self_loops = false, no_symmetrize = false, keep_duplicates = false, keep_singletons = false;
  std::optional<std::uint64_t> seed;
};

struct KernelArgs {
  std::string graph, out, variant = "full", schedule = "static";
  std::uint32_t iters = 20, threads = 1, gap = 0;
  double damping = 0.85;
  bool lenient = false, dump = false;
};

struct BfsArgs {
  std::string graph, out;
  std::uint32_t source = 0, threads = 1;
  bool dump = false;
};

struct SweepArgs {
  std::string graph, out, summary, name;
  std::vector<std::uint32_t> gaps = cb::default_sweep_gaps();
  std::vector<std::uint32_t> threads;
  std::uint32_t iters = 20, repeats = 5;
  double damping = 0.85;
};

struct ModelArgs {
  std::optional<double> r, s, k;
  double c = 4.0;
  std::string sweep, out, k_mode = "fraction", fractions_from = "gapped";
  std::uint32_t gap_for_width = 4;
};

struct CachesimArgs {
  std::string graph, out;
  std::optional<std::uint64_t> synthetic, capacity;
  std::optional<std::uint32_t> assoc;
  std::uint32_t gap = 0, line = 64, elem = 4;
  bool random = false;
};

struct MicrobenchArgs {
  std::string pattern = "coalesced", direction = "read", out;
  std::uint64_t size = std::uint64_t{1} << 30, seed = 0;
  std::optional<std::uint64_t> ops;
  std::uint32_t threads = 1, elem = 4;
};

int run_prep(const PrepArgs& a) {
  std::string format = a.format;
  if (format == "auto") format = a.input.ends_with(".mtx") ? "mtx" : "edgelist";
  cb::EdgeList el;
  if (format == "edgelist") {
    el = cb::load_edge_list(a.input);
  } else if (format == "mtx") {
    el = cb::load_matrix_market(a.input);
  } else {
    throw cb::Error(cb::Errc::config, "unknown format '" + format + "'");
  }
  cb::PreprocessOptions opts;
  opts.symmetrize = !a.no_symmetrize;
  opts.drop_self_loops = !a.keep_self_loops;
  opts.dedup = !a.keep_duplicates;
  opts.drop_singletons = !a.keep_singletons;
  opts.randomize_seed = a.seed;
  const cb::Csr g = cb::build_csr(cb::preprocess(el, opts));
  cb::write_csr_binary(g, a.output);
  std::cout << "nv=" << g.num_vertices() << " ne=" << g.num_edges() << '\n';
  return 0;
}

int run_pagerank(const KernelArgs& a, const std::string& cmdline) {
  const cb::Csr g = cb::read_csr_binary(a.graph);
  cb::PageRankConfig cfg;
  cfg.damping = a.damping;
  cfg.iterations = a.iters;
  cfg.threads = a.threads;
  cfg.strict = !a.lenient;
  cfg.schedule = parse_schedule(a.schedule);
  if (a.variant != "full" && a.variant != "streaming") {
    throw cb::Error(cb::Errc::config, "unknown variant '" + a.variant + "'");
  }
  const bool streaming = a.variant == "streaming";
  const cb::GappedCsr gg = cb::insert_gaps(g, a.gap);
  const cb::KernelResult r = streaming ? cb::pagerank_gapped_streaming_only(gg, cfg)
                                       : cb::pagerank_gapped(gg, cfg);
  const cb::ordered_json config = {{"iterations", a.iters}, {"damping", a.damping},
                                   {"threads", a.threads},  {"gap", a.gap},
                                   {"strict", cfg.strict},  {"schedule", a.schedule},
                                   {"variant", a.variant}};
  emit(cb::pagerank_report(cb::make_manifest(cmdline, config, a.graph), r, a.variant, a.dump).dump(2),
       a.out);
  return 0;
}

int run_bfs(const BfsArgs& a, const std::string& cmdline) {
  const cb::Csr g = cb::read_csr_binary(a.graph);
  const cb::KernelResult r = cb::bfs_top_down(g, a.source, a.threads);
  const cb::ordered_json config = {{"source", a.source}, {"threads", a.threads}};
  emit(cb::bfs_report(cb::make_manifest(cmdline, config, a.graph), r, a.source, a.dump).dump(2), a.out);
  return 0;
}

int run_gap_sweep(SweepArgs a, const std::string& cmdline) {
  const cb::Csr g = cb::read_csr_binary(a.graph);
  if (a.threads.empty()) a.threads = powers_of_two_up_to(default_threads());
  if (a.name.empty()) a.name = std::filesystem::path(a.graph).stem().string();

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!a.out.empty() && a.out != "-") {
    file.open(a.out, std::ios::trunc);
    if (!file) throw cb::Error(cb::Errc::io, "cannot write " + a.out);
    out = &file;
  }
  *out << cb::kSweepCsvHeader << '\n' << std::flush;

  cb::PageRankConfig cfg;
  cfg.iterations = a.iters;
  cfg.damping = a.damping;
  cb::SweepOptions opts;
  opts.graph_name = a.name;
  opts.repeats = a.repeats;
  opts.on_row = [&](const cb::SweepRow& row) { *out << cb::format_sweep_row(row) << '\n' << std::flush; };
  const cb::SweepTable table = cb::run_gap_sweep(g, a.gaps, a.threads, cfg, opts);

  const cb::ordered_json config = {{"gaps", a.gaps}, {"threads", a.threads}, {"iterations", a.iters},
                                   {"repeats", a.repeats}, {"damping", a.damping}, {"name", a.name}};
  const auto summary = cb::sweep_summary_report(cb::make_manifest(cmdline, config, a.graph), table);
  if (!a.summary.empty()) emit(summary.dump(2), a.summary);
  for (const auto& o : summary["observations"]) {
    std::cerr << fmt::format("observation {}: {} (value {}, threshold {} {})\n",
                             o["name"].get<std::string>(), o["status"].get<std::string>(),
                             o["value"].dump(), o["comparison"].get<std::string>(),
                             o["threshold"].dump());
  }
  return 0;
}

int run_model(const ModelArgs& a, const std::string& cmdline) {
  std::vector<cb::Projection> projections;
  cb::ordered_json config;
  if (!a.sweep.empty()) {
    std::ifstream in(a.sweep);
    if (!in) throw cb::Error(cb::Errc::io, "cannot open " + a.sweep);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    cb::ProjectionOptions opts;
    opts.gap_for_width = a.gap_for_width;
    opts.c = a.c;
    opts.mode = cb::parse_k_mode(a.k_mode);
    opts.fractions = cb::parse_fraction_source(a.fractions_from);
    projections = cb::project(cb::parse_sweep_csv(text), opts);
    config = {{"sweep", a.sweep}, {"gap_for_width", a.gap_for_width}, {"c", a.c},
              {"k_mode", a.k_mode}, {"fractions_from", a.fractions_from}};
  } else {
    if (!a.r || !a.s || !a.k) {
      throw cb::Error(cb::Errc::config, "direct evaluation needs --r, --s and --k (or use --sweep)");
    }
    const cb::ChannelModel m = cb::ChannelModel::make(*a.r, *a.s, *a.k, a.c);
    cb::Projection p;
    p.r_frac = m.r_frac;
    p.s_frac = m.s_frac;
    p.k = m.k;
    p.c = m.c;
    p.speedup = cb::speedup(m);
    p.mode = "given";
    p.caveats = cb::model_caveats();
    projections.push_back(p);
    config = {{"r", *a.r}, {"s", *a.s}, {"k", *a.k}, {"c", a.c}};
  }
  emit(cb::model_report(cb::make_manifest(cmdline, config), projections).dump(2), a.out);
  return 0;
}

int run_cachesim(const CachesimArgs& a, const std::string& cmdline) {
  cb::CacheConfig cache;
  cache.line_bytes = a.line;
  cache.elem_bytes = a.elem;
  cache.capacity_bytes = a.capacity;
  cache.associativity = a.assoc;
  cache.validate();

  cb::CachesimOutcome o;
  o.gap = a.gap;
  o.cache = cache;
  std::optional<std::filesystem::path> graph_path;
  if (a.synthetic) {
    if (!a.graph.empty()) throw cb::Error(cb::Errc::config, "--synthetic and --graph are exclusive");
    o.mode = "synthetic";
    o.elements = *a.synthetic;
    o.base = cb::trace_streaming_synthetic(*a.synthetic, 0, cache);
    o.gapped = cb::trace_streaming_synthetic(*a.synthetic, a.gap, cache);
    o.fetch_ratio = cb::fetch_ratio_synthetic(*a.synthetic, a.gap, cache);
  } else {
    if (a.graph.empty()) throw cb::Error(cb::Errc::config, "need --graph or --synthetic");
    graph_path = a.graph;
    const cb::Csr g = cb::read_csr_binary(a.graph);
    const cb::GappedCsr gg = cb::insert_gaps(g, a.gap);
    o.mode = "graph";
    o.elements = g.num_edges();
    o.base = cb::trace_streaming(g, cache);
    o.gapped = cb::trace_streaming(gg, cache);
    o.fetch_ratio = o.base.lines_fetched == 0 ? 1.0
                                              : static_cast<double>(o.gapped.lines_fetched) /
                                                    static_cast<double>(o.base.lines_fetched);
    if (a.random) {
      const auto trace = cb::trace_pull_phase(gg, cb::PullVariant::full);
      o.random = cb::replay_trace(trace, cb::ArrayTag::contrib, cache);
    }
  }
  const cb::ordered_json config = {
      {"gap", a.gap},
      {"line_bytes", a.line},
      {"elem_bytes", a.elem},
      {"capacity_bytes", a.capacity ? cb::ordered_json(*a.capacity) : cb::ordered_json(nullptr)},
      {"associativity", a.assoc ? cb::ordered_json(*a.assoc) : cb::ordered_json(nullptr)},
      {"synthetic", a.synthetic ? cb::ordered_json(*a.synthetic) : cb::ordered_json(nullptr)},
      {"random", a.random}};
  emit(cb::cachesim_report(cb::make_manifest(cmdline, config, graph_path), o).dump(2), a.out);
  return 0;
}

int run_microbench(const MicrobenchArgs& a, const std::string& cmdline) {
  cb::BenchConfig cfg;
  cfg.pattern = cb::parse_pattern(a.pattern);
  cfg.direction = cb::parse_direction(a.direction);
  cfg.array_bytes = a.size;
  cfg.elem_bytes = a.elem;
  cfg.threads = a.threads;
  cfg.seed = a.seed;
  cfg.ops = a.ops ? *a.ops : std::max<std::uint64_t>(1, a.size / std::max(1u, a.elem));
  const cb::BandwidthResult r = cb::run_bench(cfg);
  const cb::ordered_json config = {{"pattern", a.pattern}, {"direction", a.direction},
                                   {"array_bytes", a.size}, {"elem_bytes", a.elem},
                                   {"ops", cfg.ops},        {"threads", a.threads},
                                   {"seed", a.seed}};
  emit(cb::microbench_report(cb::make_manifest(cmdline, config), r).dump(2), a.out);
  return 0;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cmdline;
  for (int i = 0; i < argc; ++i) cmdline += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"channelbench: memory-channel characterization of sparse graph kernels"};
  app.require_subcommand(1);

  std::uint32_t env_threads = 1;
  try {
    env_threads = default_threads();
  } catch (const cb::Error& e) {
    std::cerr << "error: " << cb::to_string(e.code()) << ": " << one_line(e.what()) << '\n';
    return 1;
  }

  PrepArgs prep;
  auto* prep_cmd = app.add_subcommand("prep", "Load, clean and convert a graph to binary CSR");
  prep_cmd->add_option("-i,--input", prep.input, "Edge list or Matrix Market file")->required();
  prep_cmd->add_option("-o,--output", prep.output, "Output CSR file")->required();
  prep_cmd->add_option("--format", prep.format, "edgelist, mtx or auto")->capture_default_str();
  prep_cmd->add_flag("--keep-self-loops", prep.keep_self_loops);
  prep_cmd->add_flag("--no-symmetrize", prep.no_symmetrize);
  prep_cmd->add_flag("--keep-duplicates", prep.keep_duplicates);
  prep_cmd->add_flag("--keep-singletons", prep.keep_singletons);
  prep_cmd->add_option("--seed", prep.seed, "Relabel vertex ids with this seed");

  KernelArgs pr;
  pr.threads = env_threads;
  auto* pr_cmd = app.add_subcommand("pagerank", "Run pull-based PageRank");
  pr_cmd->add_option("-g,--graph", pr.graph, "CSR file")->required();
  pr_cmd->add_option("--iters", pr.iters)->capture_default_str();
  pr_cmd->add_option("--damping", pr.damping)->capture_default_str();
  pr_cmd->add_option("-t,--threads", pr.threads)->capture_default_str();
  pr_cmd->add_option("--gap", pr.gap, "Dummy slots per edge")->capture_default_str();
  pr_cmd->add_option("--variant", pr.variant, "full or streaming")->capture_default_str();
  pr_cmd->add_option("--schedule", pr.schedule, "static or balanced")->capture_default_str();
  pr_cmd->add_flag("--lenient", pr.lenient, "Allow zero-degree vertices");
  pr_cmd->add_flag("--scores", pr.dump, "Include per-vertex scores");
  pr_cmd->add_option("-o,--out", pr.out, "JSON output path (default stdout)");

  BfsArgs bfs;
  bfs.threads = env_threads;
  auto* bfs_cmd = app.add_subcommand("bfs", "Run top-down BFS");
  bfs_cmd->add_option("-g,--graph", bfs.graph, "CSR file")->required();
  bfs_cmd->add_option("--source", bfs.source)->capture_default_str();
  bfs_cmd->add_option("-t,--threads", bfs.threads)->capture_default_str();
  bfs_cmd->add_flag("--distances", bfs.dump, "Include per-vertex distances");
  bfs_cmd->add_option("-o,--out", bfs.out, "JSON output path (default stdout)");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("gap-sweep", "Time PageRank across gap sizes and thread counts");
  sweep_cmd->add_option("-g,--graph", sweep.graph, "CSR file")->required();
  sweep_cmd->add_option("--gaps", sweep.gaps, "Comma-separated gap sizes")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("-t,--threads", sweep.threads, "Comma-separated thread counts")->delimiter(',');
  sweep_cmd->add_option("--iters", sweep.iters)->capture_default_str();
  sweep_cmd->add_option("--damping", sweep.damping)->capture_default_str();
  sweep_cmd->add_option("--repeats", sweep.repeats)->capture_default_str();
  sweep_cmd->add_option("--name", sweep.name, "Graph label for the CSV (default: file stem)");
  sweep_cmd->add_option("-o,--out", sweep.out, "CSV output path (default stdout)");
  sweep_cmd->add_option("--summary", sweep.summary, "JSON summary with medians, means and observations");

  ModelArgs model;
  auto* model_cmd = app.add_subcommand("model", "Project narrow-channel speedup");
  model_cmd->add_option("--r", model.r, "Random-access fraction");
  model_cmd->add_option("--s", model.s, "Streaming fraction");
  model_cmd->add_option("--k", model.k, "Streaming overhead factor");
  model_cmd->add_option("--c", model.c, "Channel multiplier")->capture_default_str();
  model_cmd->add_option("--sweep", model.sweep, "Gap-sweep CSV to fit from");
  model_cmd->add_option("--gap-for-width", model.gap_for_width)->capture_default_str();
  model_cmd->add_option("--k-mode", model.k_mode, "fraction or absolute")->capture_default_str();
  model_cmd->add_option("--fractions-from", model.fractions_from, "gapped or baseline")->capture_default_str();
  model_cmd->add_option("-o,--out", model.out, "JSON output path (default stdout)");

  CachesimArgs cs;
  auto* cs_cmd = app.add_subcommand("cachesim", "Count cache lines fetched by adjacency streaming");
  cs_cmd->add_option("-g,--graph", cs.graph, "CSR file");
  cs_cmd->add_option("--synthetic", cs.synthetic, "Use a contiguous array of N elements instead");
  cs_cmd->add_option("--gap", cs.gap)->capture_default_str();
  cs_cmd->add_option("--line", cs.line, "Line bytes")->capture_default_str();
  cs_cmd->add_option("--elem", cs.elem, "Element bytes")->capture_default_str();
  cs_cmd->add_option("--capacity", cs.capacity, "Cache capacity in bytes (enables LRU)");
  cs_cmd->add_option("--assoc", cs.assoc, "Ways per set (default fully associative)");
  cs_cmd->add_flag("--random", cs.random, "Also replay the contribution reads of one pull phase");
  cs_cmd->add_option("-o,--out", cs.out, "JSON output path (default stdout)");

  MicrobenchArgs mb;
  mb.threads = env_threads;
  auto* mb_cmd = app.add_subcommand("microbench", "Coalesced/random read/write bandwidth");
  mb_cmd->add_option("--pattern", mb.pattern, "coalesced or random")->capture_default_str();
  mb_cmd->add_option("--direction", mb.direction, "read or write")->capture_default_str();
  mb_cmd->add_option("--size", mb.size, "Array bytes")->capture_default_str();
  mb_cmd->add_option("--ops", mb.ops, "Access count (default size / elem)");
  mb_cmd->add_option("-t,--threads", mb.threads)->capture_default_str();
  mb_cmd->add_option("--elem", mb.elem, "Access width in bytes")->capture_default_str();
  mb_cmd->add_option("--seed", mb.seed)->capture_default_str();
  mb_cmd->add_option("-o,--out", mb.out, "JSON output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (*prep_cmd) return run_prep(prep);
    if (*pr_cmd) return run_pagerank(pr, cmdline);
    if (*bfs_cmd) return run_bfs(bfs, cmdline);
    if (*sweep_cmd) return run_gap_sweep(sweep, cmdline);
    if (*model_cmd) return run_model(model, cmdline);
    if (*cs_cmd) return run_cachesim(cs, cmdline);
    if (*mb_cmd) return run_microbench(mb, cmdline);
  } catch (const cb::Error& e) {
    std::cerr << "error: " << cb::to_string(e.code()) << ": " << one_line(e.what()) << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}
