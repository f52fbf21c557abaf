#include <algorithm>
#include <charconv>
#include <ctime>
#include <fstream>
#include <thread>

#include <fmt/format.h>
#include <unistd.h>

#include "channelbench/error.hpp"
#include "channelbench/fnv.hpp"
#include "channelbench/report.hpp"

namespace channelbench {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string host_descriptor() {
  char name[256] = {};
  if (gethostname(name, sizeof name - 1) != 0) name[0] = '\0';
  return fmt::format("{} cpus={}", name[0] ? name : "unknown", std::thread::hardware_concurrency());
}

template <class T>
T parse_number(std::string_view tok, std::size_t line_no, std::string_view column) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error(Errc::parse, fmt::format("line {}: bad {} value '{}'", line_no, column, tok));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

void collect_paths(const ordered_json& node, const std::string& prefix, std::vector<std::string>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      const std::string path = prefix.empty() ? key : prefix + "." + key;
      out.push_back(path);
      collect_paths(value, path, out);
    }
  } else if (node.is_array() && !node.empty()) {
    collect_paths(node.front(), prefix + "[]", out);
  }
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::uint64_t file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  Fnv1Hasher h;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    h.update(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(buf.data()), got));
  }
  return h.digest();
}

RunManifest make_manifest(std::string command_line, ordered_json config,
                          const std::optional<std::filesystem::path>& graph) {
  RunManifest m;
  m.command_line = std::move(command_line);
  m.config = std::move(config);
  if (graph) {
    m.graph_path = graph->string();
    m.graph_digest = file_digest(*graph);
  }
  m.host = host_descriptor();
  m.timestamp = utc_timestamp();
  return m;
}

ordered_json to_json(const RunManifest& m) {
  ordered_json j;
  j["command_line"] = m.command_line;
  j["config"] = m.config;
  j["graph"] = {{"path", m.graph_path.empty() ? ordered_json(nullptr) : ordered_json(m.graph_path)},
                {"digest", m.graph_digest ? ordered_json(format_checksum(*m.graph_digest))
                                          : ordered_json(nullptr)}};
  j["tool_version"] = m.tool_version;
  j["host"] = m.host;
  j["timestamp"] = m.timestamp;
  return j;
}

std::string format_checksum(std::uint64_t value) { return fmt::format("0x{:016x}", value); }

std::uint64_t parse_checksum(std::string_view text) {
  if (text.size() != 18 || text.substr(0, 2) != "0x") {
    throw Error(Errc::parse, fmt::format("bad checksum '{}'", text));
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data() + 2, text.data() + text.size(), value, 16);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(Errc::parse, fmt::format("bad checksum '{}'", text));
  }
  return value;
}

std::string format_sweep_row(const SweepRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{:.9f},{}", r.graph, r.kernel, r.gap, r.threads,
                     r.iterations, r.repeat, r.streaming_ns, r.total_ns, r.s_frac,
                     format_checksum(r.checksum));
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header) {
      if (line != kSweepCsvHeader) {
        throw Error(Errc::parse, "line 1: sweep csv header does not match schema");
      }
      header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) {
      throw Error(Errc::parse, fmt::format("line {}: expected 10 fields, got {}", line_no, f.size()));
    }
    SweepRow r;
    r.graph = std::string(f[0]);
    r.kernel = std::string(f[1]);
    r.gap = parse_number<std::uint32_t>(f[2], line_no, "gap");
    r.threads = parse_number<std::uint32_t>(f[3], line_no, "threads");
    r.iterations = parse_number<std::uint32_t>(f[4], line_no, "iterations");
    r.repeat = parse_number<std::uint32_t>(f[5], line_no, "repeat");
    r.streaming_ns = parse_number<std::uint64_t>(f[6], line_no, "streaming_ns");
    r.total_ns = parse_number<std::uint64_t>(f[7], line_no, "total_ns");
    r.s_frac = parse_number<double>(f[8], line_no, "s_frac");
    r.checksum = parse_checksum(f[9]);
    rows.push_back(std::move(r));
  }
  if (!header) throw Error(Errc::parse, "sweep csv is empty");
  return rows;
}

std::vector<Observation> sweep_observations(const SweepTable& table) {
  std::vector<Observation> out;
  std::uint32_t max_threads = 0;
  for (const auto& s : table.summaries) max_threads = std::max(max_threads, s.threads);
  auto find = [&](std::uint32_t gap) -> const SweepSummary* {
    for (const auto& s : table.summaries) {
      if (s.gap == gap && s.threads == max_threads) return &s;
    }
    return nullptr;
  };
  const SweepSummary* base = find(0);
  const SweepSummary* gap4 = find(4);

  Observation slowdown{"gap4_total_over_baseline", std::nullopt, 1.5, ">", "unavailable",
                       fmt::format("total time at gap 4 / gap 0, {} threads", max_threads)};
  if (base && gap4 && base->median.total_ns > 0) {
    slowdown.value = static_cast<double>(gap4->median.total_ns) /
                     static_cast<double>(base->median.total_ns);
    slowdown.status = *slowdown.value > slowdown.threshold ? "pass" : "info";
  }
  out.push_back(slowdown);

  Observation fraction{"baseline_streaming_fraction", std::nullopt, 0.10, "<", "unavailable",
                       fmt::format("streaming / total at gap 0, {} threads", max_threads)};
  if (base && base->median.total_ns > 0) {
    fraction.value = phase_fractions(base->median).streaming;
    fraction.status = *fraction.value < fraction.threshold ? "pass" : "info";
  }
  out.push_back(fraction);
  return out;
}

ordered_json to_json(const Observation& o) {
  return {{"name", o.name},           {"value", optional_number(o.value)},
          {"threshold", o.threshold}, {"comparison", o.comparison},
          {"status", o.status},       {"detail", o.detail}};
}

ordered_json sweep_summary_report(const RunManifest& manifest, const SweepTable& table) {
  ordered_json j;
  j["schema"] = "channelbench.sweep-summary/1";
  j["csv_schema"] = kSweepCsvSchema;
  j["manifest"] = to_json(manifest);
  ordered_json configs = ordered_json::array();
  for (const auto& s : table.summaries) {
    configs.push_back({{"gap", s.gap},
                       {"threads", s.threads},
                       {"iterations", s.median.iterations},
                       {"streaming_median_ns", s.median.streaming_ns},
                       {"total_median_ns", s.median.total_ns},
                       {"streaming_mean_ns", s.streaming_mean_ns},
                       {"total_mean_ns", s.total_mean_ns},
                       {"s_frac_median", s.median.total_ns ? phase_fractions(s.median).streaming : 0.0},
                       {"clamped", s.clamped},
                       {"streaming_raw_ns", s.streaming_raw_ns},
                       {"total_raw_ns", s.total_raw_ns},
                       {"pagerank_checksum", format_checksum(s.pagerank_checksum)},
                       {"streaming_checksum", format_checksum(s.streaming_checksum)}});
  }
  j["configurations"] = std::move(configs);
  ordered_json obs = ordered_json::array();
  for (const auto& o : sweep_observations(table)) obs.push_back(to_json(o));
  j["observations"] = std::move(obs);
  return j;
}

ordered_json to_json(const Projection& p) {
  return {{"threads", p.threads == 0 ? ordered_json(nullptr) : ordered_json(p.threads)},
          {"r_frac", p.r_frac},
          {"s_frac", p.s_frac},
          {"k", p.k},
          {"c", p.c},
          {"speedup", p.speedup},
          {"mode", p.mode},
          {"caveats", p.caveats}};
}

ordered_json model_report(const RunManifest& manifest, std::span<const Projection> projections) {
  ordered_json j;
  j["schema"] = "channelbench.model/1";
  j["manifest"] = to_json(manifest);
  ordered_json arr = ordered_json::array();
  for (const auto& p : projections) arr.push_back(to_json(p));
  j["projections"] = std::move(arr);
  return j;
}

ordered_json to_json(const CacheLineStats& s) {
  return {{"lines_fetched", s.lines_fetched},
          {"bytes_used", s.bytes_used},
          {"bytes_fetched", s.bytes_fetched},
          {"utilization", s.utilization},
          {"accesses", {{"stream", s.stream_accesses}, {"random", s.random_accesses}}}};
}

ordered_json cachesim_report(const RunManifest& manifest, const CachesimOutcome& o) {
  ordered_json j;
  j["schema"] = "channelbench.cachesim/1";
  j["manifest"] = to_json(manifest);
  j["mode"] = o.mode;
  j["gap"] = o.gap;
  j["line_bytes"] = o.cache.line_bytes;
  j["elem_bytes"] = o.cache.elem_bytes;
  j["capacity_bytes"] = o.cache.capacity_bytes ? ordered_json(*o.cache.capacity_bytes) : ordered_json(nullptr);
  j["associativity"] = o.cache.associativity ? ordered_json(*o.cache.associativity) : ordered_json(nullptr);
  j["elements"] = o.elements;
  j["base"] = to_json(o.base);
  j["gapped"] = to_json(o.gapped);
  j["fetch_ratio"] = o.fetch_ratio;
  j["expected_ratio"] = static_cast<double>(
      std::min<std::uint64_t>(std::uint64_t{o.gap} + 1, o.cache.elems_per_line()));
  j["utilization"] = o.gapped.utilization;
  j["random"] = o.random ? to_json(*o.random) : ordered_json(nullptr);
  return j;
}

ordered_json pagerank_report(const RunManifest& manifest, const KernelResult& r,
                             std::string_view variant, bool include_scores) {
  ordered_json j;
  j["schema"] = "channelbench.pagerank/1";
  j["manifest"] = to_json(manifest);
  j["variant"] = variant;
  j["nv"] = r.scores.size();
  j["iterations"] = r.timing.iterations;
  j["threads"] = r.timing.threads;
  j["gap"] = r.timing.gap;
  j["checksum"] = format_checksum(r.checksum);
  j["stream_sink"] = r.stream_sink;
  double sum = 0.0;
  for (double s : r.scores) sum += s;
  j["score_sum"] = sum;
  j["elapsed_ns"] = r.timing.total_ns;
  j["scores"] = include_scores ? ordered_json(r.scores) : ordered_json(nullptr);
  return j;
}

ordered_json bfs_report(const RunManifest& manifest, const KernelResult& r, vertex_t source,
                        bool include_distances) {
  std::uint64_t reached = 0;
  vertex_t depth = 0;
  for (vertex_t d : r.distances) {
    if (d == kUnreached) continue;
    ++reached;
    depth = std::max(depth, d);
  }
  ordered_json j;
  j["schema"] = "channelbench.bfs/1";
  j["manifest"] = to_json(manifest);
  j["source"] = source;
  j["nv"] = r.distances.size();
  j["reached"] = reached;
  j["max_depth"] = depth;
  j["threads"] = r.timing.threads;
  j["checksum"] = format_checksum(r.checksum);
  j["elapsed_ns"] = r.timing.total_ns;
  ordered_json dist = ordered_json(nullptr);
  if (include_distances) {
    dist = ordered_json::array();
    for (vertex_t d : r.distances) dist.push_back(d == kUnreached ? ordered_json(nullptr) : ordered_json(d));
  }
  j["distances"] = std::move(dist);
  return j;
}

ordered_json microbench_report(const RunManifest& manifest, const BandwidthResult& r) {
  ordered_json j;
  j["schema"] = "channelbench.microbench/1";
  j["manifest"] = to_json(manifest);
  j["pattern"] = to_string(r.config.pattern);
  j["direction"] = to_string(r.config.direction);
  j["array_bytes"] = r.config.array_bytes;
  j["elem_bytes"] = r.config.elem_bytes;
  j["ops"] = r.config.ops;
  j["threads"] = r.config.threads;
  j["seed"] = r.config.seed;
  j["elapsed_ns"] = r.elapsed_ns;
  j["effective_gbps"] = r.effective_gbps;
  j["checksum"] = format_checksum(r.checksum);
  return j;
}

std::vector<std::string> json_key_paths(const ordered_json& doc) {
  std::vector<std::string> out;
  collect_paths(doc, "", out);
  return out;
}

}  // namespace channelbench
