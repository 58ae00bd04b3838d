// Acceptance gate: runs every release criterion against the default bench
// and prints one PASS/FAIL line per check. Exits nonzero on any failure.

#include <iostream>

#include <afshar/afshar.hpp>

int main() {
  try {
    const afshar::ExperimentConfig base;
    const bool ok = afshar::print_acceptance(afshar::run_acceptance(base), std::cout);
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance aborted: " << e.what() << "\n";
    return 2;
  }
}
