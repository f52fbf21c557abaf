#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace channelbench {

enum class Errc {
  io,
  parse,
  format,
  invariant,
  empty_graph,
  range,
  overflow,
  config,
  zero_degree,
  missing_row,
  nondeterministic,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::io: return "io";
    case Errc::parse: return "parse";
    case Errc::format: return "format";
    case Errc::invariant: return "invariant";
    case Errc::empty_graph: return "empty_graph";
    case Errc::range: return "range";
    case Errc::overflow: return "overflow";
    case Errc::config: return "config";
    case Errc::zero_degree: return "zero_degree";
    case Errc::missing_row: return "missing_row";
    case Errc::nondeterministic: return "nondeterministic";
  }
  return "unknown";
}

// Every module reports failures through this type. what() carries only the
// message; the CLI prefixes it with the code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace channelbench
