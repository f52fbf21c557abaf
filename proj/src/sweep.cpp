#include <algorithm>

#include "channelbench/error.hpp"
#include "channelbench/gap.hpp"
#include "channelbench/instrumentation.hpp"

namespace channelbench {

std::vector<std::uint32_t> default_sweep_gaps() { return {0, 1, 2, 4, 8, 16}; }

SweepTable run_gap_sweep(const Csr& g, std::span<const std::uint32_t> gaps,
                         std::span<const std::uint32_t> threads, const PageRankConfig& cfg,
                         const SweepOptions& opts) {
  if (gaps.empty()) throw Error(Errc::config, "gap list is empty");
  if (threads.empty()) throw Error(Errc::config, "thread list is empty");

  std::vector<std::uint32_t> gap_list(gaps.begin(), gaps.end());
  if (std::find(gap_list.begin(), gap_list.end(), 0u) == gap_list.end()) {
    gap_list.insert(gap_list.begin(), 0u);
  }

  SweepTable table;
  for (std::uint32_t gap : gap_list) {
    const GappedCsr gg = insert_gaps(g, gap);
    for (std::uint32_t t : threads) {
      PageRankConfig run_cfg = cfg;
      run_cfg.threads = t;
      const Measurement m = measure_kernel({gg, run_cfg, opts.repeats}, opts.clock);

      for (const RepeatSample& s : m.samples) {
        SweepRow row;
        row.graph = opts.graph_name;
        row.gap = gap;
        row.threads = t;
        row.iterations = run_cfg.iterations;
        row.repeat = s.repeat;
        row.total_ns = s.total_ns;
        row.streaming_ns = std::min(s.streaming_ns, s.total_ns);
        row.s_frac = row.total_ns == 0 ? 0.0
                                       : static_cast<double>(row.streaming_ns) /
                                             static_cast<double>(row.total_ns);
        row.checksum = m.pagerank_checksum;
        if (opts.on_row) opts.on_row(row);
        table.rows.push_back(std::move(row));
      }

      SweepSummary summary;
      summary.gap = gap;
      summary.threads = t;
      summary.median = m.timing;
      summary.streaming_mean_ns = m.streaming_mean_ns;
      summary.total_mean_ns = m.total_mean_ns;
      for (const RepeatSample& s : m.samples) {
        summary.streaming_raw_ns.push_back(s.streaming_ns);
        summary.total_raw_ns.push_back(s.total_ns);
      }
      summary.clamped = m.clamped;
      summary.pagerank_checksum = m.pagerank_checksum;
      summary.streaming_checksum = m.streaming_checksum;
      table.summaries.push_back(std::move(summary));
    }
  }
  return table;
}

}  // namespace channelbench
