#include <algorithm>
#include <chrono>
#include <numeric>

#include "channelbench/error.hpp"
#include "channelbench/instrumentation.hpp"

namespace channelbench {

PhaseFractions phase_fractions(const PhaseTiming& t) {
  if (t.total_ns == 0) throw Error(Errc::config, "phase_fractions: total time is zero");
  if (t.streaming_ns > t.total_ns) {
    throw Error(Errc::config, "phase_fractions: streaming time exceeds total time");
  }
  PhaseFractions f;
  f.streaming = static_cast<double>(t.streaming_ns) / static_cast<double>(t.total_ns);
  f.random = 1.0 - f.streaming;
  return f;
}

std::uint64_t steady_now_ns() {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                        std::chrono::steady_clock::now().time_since_epoch())
                                        .count());
}

std::uint64_t median_ns(std::span<const std::uint64_t> values) {
  if (values.empty()) return 0;
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  if (sorted.size() % 2 == 1) return sorted[mid];
  return sorted[mid - 1] + (sorted[mid] - sorted[mid - 1]) / 2;
}

double mean_ns(std::span<const std::uint64_t> values) {
  if (values.empty()) return 0.0;
  long double sum = 0;
  for (auto v : values) sum += v;
  return static_cast<double>(sum / values.size());
}

Measurement measure_kernel(const KernelRun& run, const Clock& clock) {
  if (run.repeats == 0) throw Error(Errc::config, "repeats must be positive");
  Measurement m;
  std::vector<std::uint64_t> streaming, total;
  for (std::uint32_t r = 0; r < run.repeats; ++r) {
    std::uint64_t t0 = clock();
    const KernelResult s = pagerank_gapped_streaming_only(run.graph, run.config);
    std::uint64_t t1 = clock();
    const KernelResult f = pagerank_gapped(run.graph, run.config);
    std::uint64_t t2 = clock();

    if (r == 0) {
      m.streaming_checksum = s.checksum;
      m.pagerank_checksum = f.checksum;
    } else if (s.checksum != m.streaming_checksum || f.checksum != m.pagerank_checksum) {
      throw Error(Errc::nondeterministic, "checksum changed between timed repeats");
    }
    const RepeatSample sample{r, t1 - t0, t2 - t1};
    streaming.push_back(sample.streaming_ns);
    total.push_back(sample.total_ns);
    m.samples.push_back(sample);
  }

  m.timing.threads = run.config.threads;
  m.timing.gap = run.graph.gap;
  m.timing.iterations = run.config.iterations;
  m.timing.total_ns = median_ns(total);
  m.streaming_median_raw_ns = median_ns(streaming);
  m.clamped = m.streaming_median_raw_ns > m.timing.total_ns;
  m.timing.streaming_ns = std::min(m.streaming_median_raw_ns, m.timing.total_ns);
  m.streaming_mean_ns = mean_ns(streaming);
  m.total_mean_ns = mean_ns(total);
  return m;
}

}  // namespace channelbench
