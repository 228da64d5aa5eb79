#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lexseq {

// Seeded random source threaded explicitly through every stochastic
// operation (init, dropout, shuffling). One instance per run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(engine_);
  }

  double normal(double mean, double stddev) {
    std::normal_distribution<double> dist(mean, stddev);
    return dist(engine_);
  }

  // Normal resampled until within clip standard deviations (BERT-style init).
  double truncated_normal(double stddev, double clip = 2.0) {
    for (;;) {
      double x = normal(0.0, stddev);
      if (x >= -clip * stddev && x <= clip * stddev) return x;
    }
  }

  bool bernoulli(double p) {
    std::bernoulli_distribution dist(p);
    return dist(engine_);
  }

  // Uniform integer in [0, n).
  std::uint64_t integer(std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
    return dist(engine_);
  }

  // Fisher-Yates; deterministic given the engine state.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(integer(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lexseq
