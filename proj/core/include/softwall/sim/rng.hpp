#pragma once

#include <cstdint>
#include <random>

namespace softwall::sim {

/// Identity of one independent random stream: (experiment seed, path index).
struct StreamId {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

/// Per-path generator. The engine state is a pure function of the StreamId, so a path
/// can be regenerated in isolation regardless of which worker ran it.
class PathRng {
 public:
  explicit PathRng(StreamId id);

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double exponential() { return exponential_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

}  // namespace softwall::sim
