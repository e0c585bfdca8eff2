// Drives one sketch over a text stream of commands and emits one JSON line
// per query. Commands: "A <id>" arrival, "Q" query, "#" comment.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace sws {

struct RunConfig {
  std::string task;  // distinct | hh | f2 | count
  std::uint64_t window = 0;
  double epsilon = 0.0;
  double p = 2.0;
  std::uint64_t universe = 1ull << 16;
  std::uint64_t seed = 1;
  bool oracle = false;  // also track the exact answer and report it
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Validates cfg (std::invalid_argument), parses `in` (ParseError names the
// line number), writes one JSON record per Q to `out`, returns record count.
std::uint64_t run_stream(const RunConfig& cfg, std::istream& in, std::ostream& out);

}  // namespace sws
