#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rsym {

// SplitMix64 finalizer; used to derive independent stream keys.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_key(std::uint64_t parent, std::uint64_t index) {
  return mix64(parent ^ mix64(index + 0x632be59bd9b4e019ULL));
}

// open interval (0,1), 53 bits
inline double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Cheap keyed stream for per-node sampling on the PWIT, where one
// generator is created per visited node.
class KeyedStream {
 public:
  explicit KeyedStream(std::uint64_t key) : state_(key) {}
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return unit_open(next()); }
  double exponential() { return -std::log(uniform()); }

 private:
  std::uint64_t state_;
};

// Per-trial generator for finite instances.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial) : eng_(derive_key(seed, trial)) {}
  double uniform() { return unit_open(eng_()); }
  double exponential() { return -std::log(uniform()); }
  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    // multiply-shift keeps the mapping identical across standard libraries
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(eng_()) * n) >> 64);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace rsym
