#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "idem/checks.hpp"
#include "idem/error.hpp"

using namespace idem;

TEST_CASE("suite registry") {
  const auto names = suite_names();
  REQUIRE(!names.empty());
  CHECK(names.back() == "all");
  const std::set<std::string> uniq(names.begin(), names.end());
  CHECK(uniq.size() == names.size());
  CHECK(uniq.count("semiring") == 1);
  CHECK(uniq.count("tauhull") == 1);
  CHECK_THROWS_AS(run_suite("no_such_suite"), ParseError);
}

TEST_CASE("all concatenates the suites in registry order") {
  std::vector<PropertyResult> glued;
  for (const auto& name : suite_names()) {
    if (name == "all") continue;
    for (auto& pr : run_suite(name)) glued.push_back(std::move(pr));
  }
  const auto all = run_suite("all");
  REQUIRE(all.size() == glued.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].suite == glued[i].suite);
    CHECK(all[i].name == glued[i].name);
    CHECK(all[i].pass == glued[i].pass);
  }
}

TEST_CASE("results are deterministic under a fixed seed") {
  const SuiteOptions opt{7, 1};
  const auto a = run_suite("kernelop", opt), b = run_suite("kernelop", opt);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].pass == b[i].pass);
    CHECK(a[i].detail == b[i].detail);
  }
}

TEST_CASE("every property names its suite and passes at trimmed scale") {
  for (const auto& name : suite_names()) {
    if (name == "all") continue;
    const auto results = run_suite(name, SuiteOptions{42, 1});
    REQUIRE(!results.empty());
    for (const auto& pr : results) {
      CHECK(pr.suite == name);
      CHECK(!pr.name.empty());
      CHECK_MESSAGE(pr.pass, pr.suite, ".", pr.name, ": ", pr.detail);
    }
  }
}
