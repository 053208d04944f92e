#include "softwall/sim/rng.hpp"

namespace softwall::sim {

namespace {

std::mt19937_64 make_engine(StreamId id) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  // The trailing tag separates these streams from any other seed_seq use of the same pair.
  std::seed_seq seq{lo(id.seed), hi(id.seed), lo(id.index), hi(id.index), 0x5eedu};
  return std::mt19937_64(seq);
}

}  // namespace

PathRng::PathRng(StreamId id) : engine_(make_engine(id)) {}

}  // namespace softwall::sim
