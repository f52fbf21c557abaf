#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "channelbench/gap.hpp"

namespace channelbench {

/// Narrow-channel speedup model. r_frac and s_frac split the run time into
/// random-access and streaming parts; narrowing the channels inflates the
/// streaming part by `k` while providing `c` times as many channels.
struct ChannelModel {
  double r_frac = 1.0;
  double s_frac = 0.0;
  double k = 1.0;
  double c = 1.0;

  /// Throws Error{config} unless both fractions lie in [0, 1] and sum to 1
  /// within 1e-12, k >= 0 and c > 0.
  static ChannelModel make(double r_frac, double s_frac, double k, double c);
};

/// 1 / (r_frac / c + k * s_frac / c)
double speedup(const ChannelModel& m);

enum class KMode {
  absolute,  // ratio of streaming times
  fraction,  // ratio of streaming fractions
};

std::string_view to_string(KMode mode);
KMode parse_k_mode(std::string_view text);

/// gapped / base. In absolute mode the inputs are streaming durations, in
/// fraction mode they are streaming fractions S / (R + S).
double fit_k(double base, double gapped, KMode mode);

/// Which sweep row supplies the (r, s) split in a projection.
enum class FractionSource { gapped, baseline };

std::string_view to_string(FractionSource source);
FractionSource parse_fraction_source(std::string_view text);

struct ProjectionOptions {
  std::uint32_t gap_for_width = 4;
  double c = 4.0;
  KMode mode = KMode::fraction;
  FractionSource fractions = FractionSource::gapped;
};

struct Projection {
  std::uint32_t threads = 0;
  double r_frac = 0.0;
  double s_frac = 0.0;
  double k = 1.0;
  double c = 1.0;
  double speedup = 1.0;
  std::string mode;
  std::vector<std::string> caveats;
};

/// Identifiers attached to every projection: the model is first order and
/// leaves out compute, instruction throughput, and stream/random overlap.
const std::vector<std::string>& model_caveats();

/// One projection per thread count in the sweep. Every thread count needs rows
/// at gap 0 and at opts.gap_for_width, else Error{missing_row}.
/// Per-configuration times are medians over repeats.
std::vector<Projection> project(std::span<const SweepRow> rows, const ProjectionOptions& opts = {});

}  // namespace channelbench
