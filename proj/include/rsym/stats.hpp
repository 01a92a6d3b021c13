#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rsym {

// Mean and standard error of a sample.
struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_halfwidth = 0.0;  // 1.96 standard errors
};

MeanEstimate estimate_mean(const std::vector<double>& xs);

struct FiniteNStats {
  int n = 0;
  double d = 1.0;
  double theta = 0.0;
  std::size_t trials = 0;
  MeanEstimate diluted;                // M_n(θ)/n
  MeanEstimate unmatched;              // q_n
  bool has_perfect = false;            // n even
  MeanEstimate perfect;                // M_n/n
};

// Trial t uses the mean-field graph seeded by derive_key(seed, t), so runs
// with equal seeds and different θ see the same instances.
FiniteNStats empirical_statistics(int n, double d, double theta, std::size_t trials, std::uint64_t seed,
                                  std::size_t jobs = 1);

struct CouplingStats {
  double mean_kn = 0.0;    // vertices within k steps of a root of K_n via edges <= θ
  double mean_pwit = 0.0;  // nodes of the depth-k θ-cluster
  double expected_pwit = 0.0;
  double z_score = 0.0;
};

CouplingStats neighborhood_coupling_stat(int n, double d, double theta, std::size_t k, std::size_t trials,
                                         std::uint64_t seed, std::size_t jobs = 1);

}  // namespace rsym
