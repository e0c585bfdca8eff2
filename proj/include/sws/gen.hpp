// Seeded stream generators: uniform and zipf benchmarks, planted heavy
// hitters, and the two adversarial distinct-count constructions (nested
// block pieces and embedded gap-hamming instances).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sws {

struct GeneratedStream {
  std::vector<std::string> header;      // comment lines, without the "# " prefix
  std::vector<std::uint64_t> arrivals;  // item ids in arrival order
  std::uint64_t universe = 0;           // smallest universe that fits the ids
};

GeneratedStream gen_uniform(std::uint64_t length, std::uint64_t universe, std::uint64_t seed);
GeneratedStream gen_zipf(std::uint64_t length, std::uint64_t universe, double alpha,
                         std::uint64_t seed);
// heavy_count copies of heavy_id shuffled among `filler` distinct singletons.
GeneratedStream gen_planted(std::uint64_t heavy_id, std::uint64_t heavy_count,
                            std::uint64_t filler, std::uint64_t seed);

// Nested-piece block construction: the window is `blocks` blocks; block b
// holds `pieces` pieces of s_b ids {0..s_b-1}, the secret piece x_b filled,
// the rest padded with id 0. Sizes follow (1+2eps)^(blocks-b+1), rounded and
// minimally raised to keep adjacent sizes separated by a full (1+2eps)
// factor. A junk prefix of fresh ids saturates small-set fast paths before
// the window content begins.
struct LbBlocksLayout {
  std::uint64_t window = 0;
  double epsilon = 0.0;
  unsigned blocks = 0;
  unsigned pieces = 0;
  std::uint64_t block_len = 0;
  std::uint64_t junk = 0;
  std::uint64_t junk_base = 0;
  std::vector<std::uint64_t> piece_sizes;  // oldest block first
  std::vector<unsigned> secrets;           // x_b in [1, pieces]
};
struct LbBlocksStream {
  GeneratedStream stream;
  LbBlocksLayout layout;
};
LbBlocksStream gen_lb_blocks(std::uint64_t window, double epsilon, unsigned blocks,
                             unsigned pieces, std::uint64_t junk, std::uint64_t seed);

// Alice's half of the embedded gap-hamming instances: bit strings x_{2k} for
// k in [lo, hi] separated by zero runs; set bits arrive as their global
// position id, clear bits as id 0.
struct GapHammingLayout {
  std::uint64_t length = 0;
  double epsilon = 0.0;
  unsigned lo = 0;
  unsigned hi = 0;
  std::vector<int> gap_signs;  // +1: planted distance (1+4eps)*2^(2k-1), -1: (1-4eps)
};
struct GapHammingStream {
  GeneratedStream stream;
  GapHammingLayout layout;
};
GapHammingStream gen_gap_hamming(std::uint64_t length, double epsilon, std::uint64_t seed);

// "# header" lines, "A <id>" per arrival, one final "Q" when any arrivals.
void write_stream(std::ostream& out, const GeneratedStream& s);

}  // namespace sws
