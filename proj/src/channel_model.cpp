#include <cmath>
#include <map>
#include <set>
#include <string>

#include "channelbench/channel_model.hpp"
#include "channelbench/error.hpp"
#include "channelbench/instrumentation.hpp"

namespace channelbench {

ChannelModel ChannelModel::make(double r_frac, double s_frac, double k, double c) {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(r_frac) || !in_unit(s_frac)) {
    throw Error(Errc::config, "fractions must lie in [0, 1]");
  }
  if (std::abs(r_frac + s_frac - 1.0) > 1e-12) {
    throw Error(Errc::config, "r_frac + s_frac must equal 1 (got " +
                                  std::to_string(r_frac + s_frac) + ")");
  }
  if (!(k >= 0.0) || !std::isfinite(k)) throw Error(Errc::config, "k must be finite and >= 0");
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(Errc::config, "c must be finite and > 0");
  return {r_frac, s_frac, k, c};
}

double speedup(const ChannelModel& m) {
  const double denom = m.r_frac / m.c + (m.k / m.c) * m.s_frac;
  if (!(denom > 0.0)) throw Error(Errc::config, "speedup: model denominator is not positive");
  return 1.0 / denom;
}

std::string_view to_string(KMode mode) {
  return mode == KMode::absolute ? "absolute" : "fraction";
}

KMode parse_k_mode(std::string_view text) {
  if (text == "absolute") return KMode::absolute;
  if (text == "fraction") return KMode::fraction;
  throw Error(Errc::config, "unknown k mode '" + std::string(text) + "'");
}

std::string_view to_string(FractionSource source) {
  return source == FractionSource::gapped ? "gapped" : "baseline";
}

FractionSource parse_fraction_source(std::string_view text) {
  if (text == "gapped") return FractionSource::gapped;
  if (text == "baseline") return FractionSource::baseline;
  throw Error(Errc::config, "unknown fraction source '" + std::string(text) + "'");
}

double fit_k(double base, double gapped, KMode mode) {
  if (!(base > 0.0)) {
    throw Error(Errc::config, std::string("fit_k: baseline ") +
                                  (mode == KMode::absolute ? "streaming time" : "streaming fraction") +
                                  " must be positive");
  }
  return gapped / base;
}

const std::vector<std::string>& model_caveats() {
  static const std::vector<std::string> caveats{
      "first_order_model",
      "excludes_computation",
      "excludes_instruction_throughput",
      "assumes_no_streaming_random_overlap",
  };
  return caveats;
}

namespace {

struct Aggregate {
  std::vector<std::uint64_t> streaming;
  std::vector<std::uint64_t> total;
};

struct Medians {
  double streaming;
  double s_frac;
};

Medians medians(const Aggregate& a) {
  const auto s = static_cast<double>(median_ns(a.streaming));
  const auto t = static_cast<double>(median_ns(a.total));
  if (t <= 0.0) throw Error(Errc::config, "projection: sweep row with zero total time");
  return {s, s / t};
}

}  // namespace

std::vector<Projection> project(std::span<const SweepRow> rows, const ProjectionOptions& opts) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, Aggregate> by_config;
  std::set<std::uint32_t> thread_counts;
  for (const SweepRow& r : rows) {
    if (r.kernel != "pagerank") continue;
    auto& agg = by_config[{r.gap, r.threads}];
    agg.streaming.push_back(r.streaming_ns);
    agg.total.push_back(r.total_ns);
    thread_counts.insert(r.threads);
  }

  std::vector<Projection> out;
  for (std::uint32_t t : thread_counts) {
    const auto base_it = by_config.find({0, t});
    const auto gap_it = by_config.find({opts.gap_for_width, t});
    if (base_it == by_config.end()) {
      throw Error(Errc::missing_row, "sweep lacks a gap 0 row for " + std::to_string(t) + " threads");
    }
    if (gap_it == by_config.end()) {
      throw Error(Errc::missing_row, "sweep lacks a gap " + std::to_string(opts.gap_for_width) +
                                         " row for " + std::to_string(t) + " threads");
    }
    const Medians base = medians(base_it->second);
    const Medians gapped = medians(gap_it->second);

    const double k = opts.mode == KMode::absolute ? fit_k(base.streaming, gapped.streaming, opts.mode)
                                                  : fit_k(base.s_frac, gapped.s_frac, opts.mode);
    const double s = opts.fractions == FractionSource::gapped ? gapped.s_frac : base.s_frac;
    const ChannelModel m = ChannelModel::make(1.0 - s, s, k, opts.c);

    Projection p;
    p.threads = t;
    p.r_frac = m.r_frac;
    p.s_frac = m.s_frac;
    p.k = m.k;
    p.c = m.c;
    p.speedup = speedup(m);
    p.mode = std::string(to_string(opts.mode));
    p.caveats = model_caveats();
    out.push_back(std::move(p));
  }
  if (out.empty()) throw Error(Errc::missing_row, "sweep contains no pagerank rows");
  return out;
}

}  // namespace channelbench
