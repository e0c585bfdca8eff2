// Seeded stream generators.
#include "sws/gen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sws {
namespace {

constexpr std::uint64_t kJunkBase = 1ull << 20;
constexpr std::uint64_t kMaxZipfUniverse = 1ull << 22;

std::string join_u64(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) os << ',';
    os << v[i];
  }
  return os.str();
}

}  // namespace

GeneratedStream gen_uniform(std::uint64_t length, std::uint64_t universe, std::uint64_t seed) {
  if (universe == 0) throw std::invalid_argument("gen_uniform: universe must be positive");
  GeneratedStream out;
  std::ostringstream h;
  h << "kind=uniform length=" << length << " universe=" << universe << " seed=" << seed;
  out.header.push_back(h.str());
  out.universe = universe;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, universe - 1);
  out.arrivals.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) out.arrivals.push_back(pick(rng));
  return out;
}

GeneratedStream gen_zipf(std::uint64_t length, std::uint64_t universe, double alpha,
                         std::uint64_t seed) {
  if (universe == 0 || universe > kMaxZipfUniverse)
    throw std::invalid_argument("gen_zipf: universe out of range");
  if (!(alpha > 0.0)) throw std::invalid_argument("gen_zipf: alpha must be positive");
  GeneratedStream out;
  std::ostringstream h;
  h << "kind=zipf length=" << length << " universe=" << universe << " alpha=" << alpha
    << " seed=" << seed;
  out.header.push_back(h.str());
  out.universe = universe;
  // Cumulative weights 1/r^alpha; rank r maps to item r-1.
  std::vector<double> cdf(universe);
  double total = 0.0;
  for (std::uint64_t r = 1; r <= universe; ++r) {
    total += std::pow(static_cast<double>(r), -alpha);
    cdf[r - 1] = total;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(0.0, total);
  out.arrivals.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) {
    auto it = std::lower_bound(cdf.begin(), cdf.end(), pick(rng));
    out.arrivals.push_back(static_cast<std::uint64_t>(it - cdf.begin()));
  }
  return out;
}

GeneratedStream gen_planted(std::uint64_t heavy_id, std::uint64_t heavy_count,
                            std::uint64_t filler, std::uint64_t seed) {
  GeneratedStream out;
  std::ostringstream h;
  h << "kind=planted heavy_id=" << heavy_id << " heavy_count=" << heavy_count
    << " filler=" << filler << " seed=" << seed;
  out.header.push_back(h.str());
  out.universe = heavy_id + filler + 1;
  out.arrivals.reserve(heavy_count + filler);
  for (std::uint64_t i = 0; i < heavy_count; ++i) out.arrivals.push_back(heavy_id);
  // Singletons occupy the ids directly above the heavy one.
  for (std::uint64_t i = 1; i <= filler; ++i) out.arrivals.push_back(heavy_id + i);
  std::mt19937_64 rng(seed);
  std::shuffle(out.arrivals.begin(), out.arrivals.end(), rng);
  return out;
}

LbBlocksStream gen_lb_blocks(std::uint64_t window, double epsilon, unsigned blocks,
                             unsigned pieces, std::uint64_t junk, std::uint64_t seed) {
  if (window == 0 || blocks == 0 || pieces == 0)
    throw std::invalid_argument("gen_lb_blocks: window, blocks, pieces must be positive");
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("gen_lb_blocks: epsilon must lie in (0, 1)");
  if (window % blocks != 0)
    throw std::invalid_argument("gen_lb_blocks: window must be a multiple of blocks");

  LbBlocksStream out;
  LbBlocksLayout& lay = out.layout;
  lay.window = window;
  lay.epsilon = epsilon;
  lay.blocks = blocks;
  lay.pieces = pieces;
  lay.block_len = window / blocks;
  lay.junk = junk;
  lay.junk_base = kJunkBase;

  // Piece sizes grow by (1+2eps) per block toward the old end. Rounding can
  // collapse adjacent sizes, which makes the expiry step undetectable, so
  // each size is raised to keep the full factor over the next newer block.
  const double ratio = 1.0 + 2.0 * epsilon;
  lay.piece_sizes.assign(blocks, 0);
  std::uint64_t newer = 0;
  for (unsigned b = blocks; b >= 1; --b) {
    double want = std::pow(ratio, static_cast<double>(blocks - b + 1));
    auto s = static_cast<std::uint64_t>(std::llround(want));
    if (s == 0) s = 1;
    if (newer != 0) {
      auto floor_sep = static_cast<std::uint64_t>(std::ceil(static_cast<double>(newer) * ratio));
      s = std::max(s, floor_sep);
    }
    lay.piece_sizes[b - 1] = s;
    newer = s;
  }
  if (pieces * lay.piece_sizes.front() > lay.block_len)
    throw std::invalid_argument("gen_lb_blocks: pieces do not fit in a block");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> pick(1, pieces);
  lay.secrets.assign(blocks, 0);
  for (unsigned b = 0; b < blocks; ++b) lay.secrets[b] = pick(rng);

  GeneratedStream& gs = out.stream;
  std::ostringstream h;
  h << "kind=lb-blocks window=" << window << " epsilon=" << epsilon << " blocks=" << blocks
    << " pieces=" << pieces << " junk=" << junk << " junk_base=" << lay.junk_base
    << " seed=" << seed;
  gs.header.push_back(h.str());
  gs.header.push_back("sizes=" + join_u64(lay.piece_sizes));
  std::vector<std::uint64_t> secrets_u64(lay.secrets.begin(), lay.secrets.end());
  gs.header.push_back("secrets=" + join_u64(secrets_u64));
  gs.universe = std::max<std::uint64_t>(lay.piece_sizes.front(),
                                        junk > 0 ? lay.junk_base + junk : 1);

  gs.arrivals.reserve(junk + window);
  for (std::uint64_t i = 0; i < junk; ++i) gs.arrivals.push_back(lay.junk_base + i);
  for (unsigned b = 1; b <= blocks; ++b) {
    const std::uint64_t s = lay.piece_sizes[b - 1];
    for (unsigned j = 1; j <= pieces; ++j) {
      if (j == lay.secrets[b - 1]) {
        for (std::uint64_t v = 0; v < s; ++v) gs.arrivals.push_back(v);
      } else {
        for (std::uint64_t v = 0; v < s; ++v) gs.arrivals.push_back(0);
      }
    }
    for (std::uint64_t v = pieces * s; v < lay.block_len; ++v) gs.arrivals.push_back(0);
  }
  return out;
}

GapHammingStream gen_gap_hamming(std::uint64_t length, double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("gen_gap_hamming: epsilon must lie in (0, 1)");
  if (length < 4) throw std::invalid_argument("gen_gap_hamming: length too small");

  GapHammingStream out;
  GapHammingLayout& lay = out.layout;
  lay.length = length;
  lay.epsilon = epsilon;
  lay.lo = static_cast<unsigned>(std::ceil(std::log2(1.0 / epsilon) / 2.0));
  if (lay.lo == 0) lay.lo = 1;
  unsigned logn = std::bit_width(length) - 1;
  if (logn < 1) throw std::invalid_argument("gen_gap_hamming: length too small");
  lay.hi = (logn - 1) / 2;
  if (lay.lo > lay.hi)
    throw std::invalid_argument("gen_gap_hamming: length too small for epsilon");

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution bit(0.5);
  std::bernoulli_distribution coin(0.5);

  // S = x_{2hi} 0^(2^(2hi-1)) x_{2hi-2} ... x_{2lo}: newest instances sit at
  // the young end of the window, so the largest string arrives first.
  std::vector<bool> s_bits;
  for (unsigned k = lay.hi; k >= lay.lo; --k) {
    std::uint64_t xlen = 1ull << (2 * k);
    for (std::uint64_t i = 0; i < xlen; ++i) s_bits.push_back(bit(rng));
    if (k > lay.lo) {
      std::uint64_t zlen = 1ull << (2 * k - 1);
      for (std::uint64_t i = 0; i < zlen; ++i) s_bits.push_back(false);
    }
    lay.gap_signs.push_back(coin(rng) ? +1 : -1);
  }
  std::reverse(lay.gap_signs.begin(), lay.gap_signs.end());  // index lo first

  GeneratedStream& gs = out.stream;
  std::ostringstream h;
  h << "kind=gap-hamming length=" << length << " epsilon=" << epsilon << " lo=" << lay.lo
    << " hi=" << lay.hi << " seed=" << seed;
  gs.header.push_back(h.str());
  std::ostringstream sg;
  sg << "signs=";
  for (std::size_t i = 0; i < lay.gap_signs.size(); ++i) {
    if (i > 0) sg << ',';
    sg << (lay.gap_signs[i] > 0 ? "+1" : "-1");
  }
  gs.header.push_back(sg.str());
  gs.universe = length + 1;

  gs.arrivals.reserve(length);
  for (std::uint64_t pos = 1; pos <= length; ++pos) {
    bool set = pos <= s_bits.size() && s_bits[pos - 1];
    gs.arrivals.push_back(set ? pos : 0);
  }
  return out;
}

void write_stream(std::ostream& out, const GeneratedStream& s) {
  for (const auto& line : s.header) out << "# " << line << '\n';
  for (std::uint64_t id : s.arrivals) out << "A " << id << '\n';
  if (!s.arrivals.empty()) out << "Q\n";
}

}  // namespace sws
