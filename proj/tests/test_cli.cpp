// End-to-end checks of the command-line binary through a subprocess.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

fs::path temp_file(const std::string& tag) {
  static std::atomic<int> seq{0};
  return fs::temp_directory_path() /
         ("sws_cli_" + tag + "_" + std::to_string(seq++) + ".txt");
}

CliResult run_cli(const std::string& args, const std::string& stdin_text = "") {
  fs::path in = temp_file("in"), out = temp_file("out"), err = temp_file("err");
  {
    std::ofstream f(in, std::ios::binary);
    f << stdin_text;
  }
  std::string cmd = std::string("\"") + SWS_CLI_PATH + "\" " + args + " < " +
                    in.string() + " > " + out.string() + " 2> " + err.string();
  int rc = std::system(cmd.c_str());
  CliResult r;
  r.code = rc != -1 && WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  fs::remove(in);
  fs::remove(out);
  fs::remove(err);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("distinct run reports the estimate and the exact answer") {
  auto r = run_cli("run --task distinct --window 4 --epsilon 0.5 --oracle --input -",
                   "A 5\nA 5\nQ\n");
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 1);
  json rec = json::parse(lines[0]);
  CHECK(rec["position"] == 2);
  CHECK(rec["task"] == "distinct");
  CHECK(rec["estimate"].get<double>() == 1.0);
  CHECK(rec["exact"] == 1);
  CHECK(rec["instance_count"].get<int>() >= 1);
  CHECK(rec["bytes_used"].get<std::uint64_t>() > 0);
}

TEST_CASE("comments and blank lines are skipped") {
  auto r = run_cli("run --task distinct --window 4 --epsilon 0.5 --input -",
                   "# a comment\n\nA 1\nQ\n");
  REQUIRE(r.code == 0);
  json rec = json::parse(lines_of(r.out).at(0));
  CHECK(rec["estimate"].get<double>() == 1.0);
}

TEST_CASE("malformed input names the offending line") {
  auto r = run_cli("run --task distinct --window 4 --epsilon 0.5 --input -",
                   "A 1\nA x\nQ\n");
  CHECK(r.code == 1);
  CHECK(r.err.find("line 2") != std::string::npos);

  r = run_cli("run --task distinct --window 4 --epsilon 0.5 --universe 16 --input -",
              "A 16\n");
  CHECK(r.code == 1);
  CHECK(r.err.find("line 1") != std::string::npos);
  CHECK(r.err.find("universe") != std::string::npos);
}

TEST_CASE("f2 run is exact on a two-copy stream") {
  auto r = run_cli("run --task f2 --window 8 --epsilon 0.5 --oracle --input -",
                   "A 1\nA 1\nQ\n");
  REQUIRE(r.code == 0);
  json rec = json::parse(lines_of(r.out).at(0));
  CHECK(rec["estimate"].get<double>() == 4.0);
  CHECK(rec["exact"].get<double>() == 4.0);
}

TEST_CASE("count run tracks the window length") {
  auto r = run_cli("run --task count --window 8 --epsilon 0.5 --oracle --input -",
                   "A 1\nA 2\nA 3\nA 4\nA 5\nQ\n");
  REQUIRE(r.code == 0);
  json rec = json::parse(lines_of(r.out).at(0));
  CHECK(rec["exact"] == 5);
  double est = rec["estimate"].get<double>();
  CHECK(std::abs(est - 5.0) <= 2.5 + 1e-12);
}

TEST_CASE("generated planted stream feeds the heavy-hitter task") {
  fs::path stream = temp_file("stream");
  auto g = run_cli("gen --kind planted --heavy-id 1 --heavy-count 64 --filler 192 --seed 3 --out " +
                   stream.string());
  REQUIRE(g.code == 0);

  auto r = run_cli("run --task hh --window 256 --epsilon 0.9 --p 2 --oracle --input " +
                   stream.string());
  fs::remove(stream);
  REQUIRE(r.code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 1);
  json rec = json::parse(lines[0]);
  CHECK(rec["exact_norm"].get<double>() > 0.0);
  std::set<std::uint64_t> reported;
  for (const auto& e : rec["items"]) reported.insert(e["item"].get<std::uint64_t>());
  for (const auto& h : rec["exact_heavy"]) CHECK(reported.count(h.get<std::uint64_t>()) == 1);
}

TEST_CASE("reruns of the same command are byte-identical") {
  const std::string cmd =
      "run --task distinct --window 16 --epsilon 0.5 --seed 9 --oracle --input -";
  std::string input;
  for (int i = 0; i < 64; ++i) input += "A " + std::to_string(i % 24) + "\nQ\n";
  auto a = run_cli(cmd, input);
  auto b = run_cli(cmd, input);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("stream files are self-describing") {
  fs::path stream = temp_file("stream");
  auto g = run_cli("gen --kind zipf --length 16 --universe 64 --seed 5 --out " + stream.string());
  REQUIRE(g.code == 0);
  auto lines = lines_of(slurp(stream));
  fs::remove(stream);
  REQUIRE(!lines.empty());
  CHECK(lines[0].rfind("# ", 0) == 0);
  CHECK(lines[0].find("kind=zipf") != std::string::npos);
  CHECK(lines[0].find("seed=5") != std::string::npos);
  int arrivals = 0;
  for (const auto& l : lines) arrivals += l.rfind("A ", 0) == 0 ? 1 : 0;
  CHECK(arrivals == 16);
  CHECK(lines.back() == "Q");
}

TEST_CASE("a zero-length stream is header-only") {
  fs::path stream = temp_file("stream");
  auto g = run_cli("gen --kind uniform --length 0 --out " + stream.string());
  REQUIRE(g.code == 0);
  auto lines = lines_of(slurp(stream));
  fs::remove(stream);
  REQUIRE(!lines.empty());
  for (const auto& l : lines) REQUIRE(l.rfind("# ", 0) == 0);
}

TEST_CASE("infeasible generator geometry is a usage error") {
  fs::path stream = temp_file("stream");
  auto g = run_cli("gen --kind lb-blocks --window 64 --blocks 8 --pieces 50 --out " +
                   stream.string());
  fs::remove(stream);
  CHECK(g.code == 2);
  CHECK(g.err.find("error:") != std::string::npos);
}

TEST_CASE("bad usage exits with the usage code") {
  CHECK(run_cli("run --task nope --window 4 --epsilon 0.5 --input -", "Q\n").code == 2);
  CHECK(run_cli("run --window 4 --epsilon 0.5 --input -").code == 2);  // missing --task
  CHECK(run_cli("gen --kind unknown --out /tmp/x.txt").code == 2);
  CHECK(run_cli("nonsense").code == 2);
  CHECK(run_cli("run --task distinct --window 0 --epsilon 0.5 --input -", "Q\n").code == 2);
  CHECK(run_cli("--help").code == 0);
}
