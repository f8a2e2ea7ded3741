#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Named property suites behind the `check` subcommand. Each suite runs a
// family of law and theorem checks at desk scale: exhaustive where the
// carriers are finite, seeded random sampling over the real semirings.
// Results are deterministic for a fixed seed and size.

namespace idem {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;  // witness or note; empty when there is nothing to say
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  // 0 picks each suite's default scale. Larger values raise the random
  // trial counts; 1 trims dimension-capped scans to the smallest shapes.
  std::size_t size = 0;
};

// Names accepted by run_suite, in execution order of "all".
std::vector<std::string> suite_names();

// Runs one suite (or "all"); throws ParseError for an unknown name.
std::vector<PropertyResult> run_suite(const std::string& name,
                                      const SuiteOptions& opt = {});

}  // namespace idem
