// Command-line entry point: run (drive a sketch over a stream), gen (write
// seeded stream files), accept (acceptance suites).
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sws/accept.hpp"
#include "sws/gen.hpp"
#include "sws/stream_run.hpp"
#include "sws/threads.hpp"

namespace {

struct GenOptions {
  std::string kind;
  std::string out_path;
  std::uint64_t length = 1024;
  std::uint64_t universe = 65536;
  double alpha = 1.1;
  std::uint64_t heavy_id = 1;
  std::uint64_t heavy_count = 256;
  std::uint64_t filler = 768;
  std::uint64_t window = 4096;
  double epsilon = 0.25;
  unsigned blocks = 8;
  unsigned pieces = 12;
  std::uint64_t junk = 4096;
  std::uint64_t seed = 1;
};

int do_run(const sws::RunConfig& cfg, const std::string& input) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (input != "-") {
    file.open(input);
    if (!file) {
      std::cerr << "error: cannot open " << input << '\n';
      return 2;
    }
    in = &file;
  }
  sws::run_stream(cfg, *in, std::cout);
  return 0;
}

int do_gen(const GenOptions& g) {
  sws::GeneratedStream stream;
  if (g.kind == "uniform") {
    stream = sws::gen_uniform(g.length, g.universe, g.seed);
  } else if (g.kind == "zipf") {
    stream = sws::gen_zipf(g.length, g.universe, g.alpha, g.seed);
  } else if (g.kind == "planted") {
    stream = sws::gen_planted(g.heavy_id, g.heavy_count, g.filler, g.seed);
  } else if (g.kind == "lb-blocks") {
    stream = sws::gen_lb_blocks(g.window, g.epsilon, g.blocks, g.pieces, g.junk, g.seed).stream;
  } else if (g.kind == "gap-hamming") {
    stream = sws::gen_gap_hamming(g.length, g.epsilon, g.seed).stream;
  } else {
    throw std::invalid_argument(
        "gen: kind must be uniform, zipf, planted, lb-blocks, or gap-hamming");
  }
  std::ofstream out(g.out_path);
  if (!out) {
    std::cerr << "error: cannot write " << g.out_path << '\n';
    return 2;
  }
  sws::write_stream(out, stream);
  return 0;
}

int do_accept(const std::string& suite, std::uint64_t seed) {
  auto results = sws::run_acceptance(suite, seed);
  bool all = true;
  for (const auto& r : results) {
    std::cout << sws::format_result(r) << '\n';
    all = all && r.pass;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  sws::apply_thread_cap();
  CLI::App app{"sliding-window streaming sketches"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "drive one sketch over a command stream");
  sws::RunConfig cfg;
  std::string input;
  run->add_option("--task", cfg.task, "distinct | hh | f2 | count")->required();
  run->add_option("--window", cfg.window, "window size n")->required();
  run->add_option("--epsilon", cfg.epsilon, "accuracy parameter")->required();
  run->add_option("--p", cfg.p, "norm order for task hh (default 2)");
  run->add_option("--universe", cfg.universe, "item id bound (default 2^16)");
  run->add_option("--seed", cfg.seed, "master hash seed (default 1)");
  run->add_flag("--oracle", cfg.oracle, "also report exact answers");
  run->add_option("--input", input, "command file, - for stdin")->required();

  auto* gen = app.add_subcommand("gen", "write a seeded stream file");
  GenOptions g;
  gen->add_option("--kind", g.kind, "uniform | zipf | planted | lb-blocks | gap-hamming")
      ->required();
  gen->add_option("--length", g.length, "arrival count (uniform, zipf, gap-hamming)");
  gen->add_option("--universe", g.universe, "item id bound (uniform, zipf)");
  gen->add_option("--alpha", g.alpha, "zipf exponent");
  gen->add_option("--heavy-id", g.heavy_id, "planted heavy item id");
  gen->add_option("--heavy-count", g.heavy_count, "planted heavy frequency");
  gen->add_option("--filler", g.filler, "planted singleton count");
  gen->add_option("--window", g.window, "lb-blocks window size");
  gen->add_option("--epsilon", g.epsilon, "lb-blocks / gap-hamming accuracy");
  gen->add_option("--blocks", g.blocks, "lb-blocks block count");
  gen->add_option("--pieces", g.pieces, "lb-blocks pieces per block");
  gen->add_option("--junk", g.junk, "lb-blocks junk prefix length");
  gen->add_option("--seed", g.seed, "generator seed");
  gen->add_option("--out", g.out_path, "output file")->required();

  auto* acc = app.add_subcommand("accept", "run acceptance suites");
  std::string suite = "all";
  std::uint64_t accept_seed = 1;
  acc->add_option("--suite", suite, "distinct | hh | counter | histogram | all");
  acc->add_option("--seed", accept_seed, "master seed for seeded trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits clean, bad usage exits 2
  }

  try {
    if (run->parsed()) return do_run(cfg, input);
    if (gen->parsed()) return do_gen(g);
    return do_accept(suite, accept_seed);
  } catch (const sws::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
