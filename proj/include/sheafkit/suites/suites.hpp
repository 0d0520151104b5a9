#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sheafkit::suites {

struct SuiteOptions {
  std::size_t max_points = 4;  // corpus spaces have at most this many points
  std::size_t max_set = 3;     // random value sets have at most this many elements
  std::uint64_t seed = 20240601;
};

struct SuiteReport {
  std::string id;
  std::string statement;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::vector<std::pair<std::string, std::size_t>> counts;  // named tallies, in insertion order
  std::vector<std::string> failures;                        // first witnesses only

  bool ok() const { return cases > 0 && passed == cases; }
  std::size_t count(const std::string& name) const;
};

const std::vector<std::string>& suite_ids();
/// Throws UnknownCommand for an unknown id.
SuiteReport run_suite(const std::string& id, const SuiteOptions& options = {});

}  // namespace sheafkit::suites
