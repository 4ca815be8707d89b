// Prints one line per acceptance criterion and exits non-zero if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "qig/acceptance.hpp"

int main(int argc, char** argv) {
  qig::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--workers" && i + 1 < argc) {
      opts.workers = static_cast<unsigned>(std::strtoul(argv[++i], nullptr, 10));
    } else {
      opts.only.push_back(arg);
    }
  }
  int failed = 0;
  for (const auto& r : qig::run_acceptance(opts)) {
    std::printf("[%s] criterion %2d %-24s %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str(), r.seconds);
    failed += r.passed ? 0 : 1;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
