#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "channelbench/cacheline.hpp"
#include "channelbench/channel_model.hpp"
#include "channelbench/gap.hpp"
#include "channelbench/kernels.hpp"
#include "channelbench/microbench.hpp"

namespace channelbench {

using ordered_json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr std::string_view kSweepCsvHeader =
    "graph,kernel,gap,threads,iterations,repeat,streaming_ns,total_ns,s_frac,checksum";
inline constexpr std::string_view kSweepCsvSchema = "channelbench.sweep-csv/1";

struct RunManifest {
  std::string command_line;
  ordered_json config = ordered_json::object();
  std::string graph_path;
  std::optional<std::uint64_t> graph_digest;
  std::string tool_version{kToolVersion};
  std::string host;
  std::string timestamp;
};

/// Fills host and timestamp, and digests the graph file when a path is given.
RunManifest make_manifest(std::string command_line, ordered_json config,
                          const std::optional<std::filesystem::path>& graph = std::nullopt);

ordered_json to_json(const RunManifest& m);

/// FNV-1 over the file's bytes.
std::uint64_t file_digest(const std::filesystem::path& path);

std::string format_checksum(std::uint64_t value);
std::uint64_t parse_checksum(std::string_view text);

// Sweep CSV ----------------------------------------------------------------

std::string format_sweep_row(const SweepRow& row);

/// Parses a gap-sweep CSV. The header must match kSweepCsvHeader exactly.
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

struct Observation {
  std::string name;
  std::optional<double> value;
  double threshold = 0.0;
  std::string comparison;  // ">" or "<"
  std::string status;      // "pass", "info" or "unavailable"
  std::string detail;
};

/// Compares the sweep against the channel-saturation behavior reported for
/// DDR hosts: gap 4 at the largest thread count slows the run by more than
/// 50%, and the baseline streaming fraction stays under 10%. Never fails;
/// a miss is reported as "info".
std::vector<Observation> sweep_observations(const SweepTable& table);

ordered_json to_json(const Observation& o);
ordered_json sweep_summary_report(const RunManifest& manifest, const SweepTable& table);

// Model ------------------------------------------------------------------

ordered_json to_json(const Projection& p);
ordered_json model_report(const RunManifest& manifest, std::span<const Projection> projections);

// Cachesim ---------------------------------------------------------------

struct CachesimOutcome {
  std::string mode;  // "synthetic" or "graph"
  std::uint32_t gap = 0;
  CacheConfig cache;
  std::uint64_t elements = 0;
  CacheLineStats base;
  CacheLineStats gapped;
  double fetch_ratio = 1.0;
  std::optional<CacheLineStats> random;
};

ordered_json to_json(const CacheLineStats& s);
ordered_json cachesim_report(const RunManifest& manifest, const CachesimOutcome& outcome);

// Kernels and microbench ---------------------------------------------------

ordered_json pagerank_report(const RunManifest& manifest, const KernelResult& result,
                             std::string_view variant, bool include_scores);
ordered_json bfs_report(const RunManifest& manifest, const KernelResult& result, vertex_t source,
                        bool include_distances);
ordered_json microbench_report(const RunManifest& manifest, const BandwidthResult& result);

/// Dotted key paths of every object member, depth first, in document order.
/// Array elements contribute "[]" once, taken from the first element.
std::vector<std::string> json_key_paths(const ordered_json& doc);

}  // namespace channelbench
