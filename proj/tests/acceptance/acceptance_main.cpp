// End-to-end acceptance run: one PASS/FAIL line per criterion, followed by
// the individual measurements. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "qcontext/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = qcontext::acceptance::kDefaultSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

  const auto start = std::chrono::steady_clock::now();
  const auto criteria = qcontext::acceptance::run_suite(seed);
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  int failures = 0;
  for (const auto& c : criteria) {
    std::printf("[%s] %2d. %s\n", c.pass() ? "PASS" : "FAIL", c.id, c.title.c_str());
    for (const auto& check : c.checks) {
      std::printf("         %-4s %-58s measured=%.6e  bound=%.6e\n", check.pass ? "ok" : "FAIL", check.name.c_str(),
                  check.measured, check.tolerance);
    }
    if (!c.pass()) ++failures;
  }
  std::printf("%zu criteria, %d failed, seed %llu, %.2f s\n", criteria.size(), failures,
              static_cast<unsigned long long>(seed), elapsed);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
