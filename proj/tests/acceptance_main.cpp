// Runs one acceptance suite (argv[1], default all) and prints one line per
// criterion. Exit 0 iff every criterion passed.
#include <cstdlib>
#include <iostream>
#include <string>

#include "sws/accept.hpp"
#include "sws/threads.hpp"

int main(int argc, char** argv) {
  sws::apply_thread_cap();
  std::string suite = argc > 1 ? argv[1] : "all";
  std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  try {
    auto results = sws::run_acceptance(suite, seed);
    bool all = true;
    for (const auto& r : results) {
      std::cout << sws::format_result(r) << std::endl;
      all = all && r.pass;
    }
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
