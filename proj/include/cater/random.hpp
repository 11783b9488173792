#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cater {

std::uint64_t splitmix64(std::uint64_t& state);

// xoshiro256** seeded through splitmix64; identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();                      // [0, 1)
  std::size_t below(std::size_t bound);  // [0, bound)
  // Index i with cdf[i-1] <= u < cdf[i] for u uniform on [0, cdf.back()).
  std::size_t categorical(const std::vector<double>& cdf);

 private:
  std::uint64_t state_[4];
};

std::vector<double> cumulative(const std::vector<double>& weights);

}  // namespace cater
