// Acceptance suite: one pass/fail line per criterion. Exit 0 on full pass,
// 3 otherwise. Heavy sweeps are shared between criteria.

#include <cstring>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "vhed/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--workers" && i + 1 < argc) {
      workers = std::atoi(argv[++i]);
    } else if (arg == "--verbose") {
      verbose = true;
    } else if (arg == "--criteria") {
      while (i + 1 < argc && argv[i + 1][0] != '-') ids.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: vhed_acceptance [--criteria 1 2 ...] [--workers N] [--verbose]\n";
      return 2;
    }
  }
  const auto results = vhed::acceptance::run(ids, workers, verbose);
  return vhed::acceptance::report(results);
}
