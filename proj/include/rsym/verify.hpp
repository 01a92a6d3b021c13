#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rsym {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;  // observed statistic
  double bound = 0.0;  // what it was compared against
  std::string detail;
  std::string replay;  // failing instance, when there is one
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  std::size_t graphs = 1000;    // payoff-identity: capacity-1 graphs
  std::size_t trees = 500;      // payoff-identity: trees per tree game
  std::size_t samples = 100000; // simulator-consistency
  double d = 1.0;
  double theta = 2.0;
  std::size_t k = 6;
  double alpha = 0.01;
  std::size_t jobs = 1;
};

const std::vector<std::string>& suite_names();

// Throws invalid_argument for an unknown suite.
std::vector<Check> run_suite(const std::string& suite, const VerifyOptions& opt);

}  // namespace rsym
