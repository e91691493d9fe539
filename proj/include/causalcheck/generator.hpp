#pragma once

#include <cstddef>
#include <cstdint>

#include "causalcheck/history.hpp"
#include "causalcheck/verdict.hpp"

namespace causalcheck {

// xorshift64* seeded through splitmix64. Streams are fixed by the seed.
class Prng {
 public:
  explicit Prng(std::uint64_t seed);
  std::uint64_t next();
  // Uniform-ish value in [0, bound); bound must be positive.
  std::uint64_t uniform(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

struct GenConfig {
  std::size_t clients = 2;
  std::size_t transactions = 3;  // per client
  std::size_t events = 1;        // per transaction; only 1 is supported
  std::size_t variables = 2;
  std::uint64_t seed = 0;
};

// Clients p1..p{c}, variables x1..x{v}, ids id0, id1, ... in generation
// order. Each event is a read or a write with equal odds on a uniform
// variable; writes take lastWrite(var) + 1, reads stay unvalued.
// Throws Error{InvalidArgument} if events != 1, or variables == 0 while
// events are requested.
History generate(const GenConfig& config);

// Runs the operations in a random po-respecting interleaving against one
// shared store and fills every read with the value it observes.
History execute_simulated(const History& history, std::uint64_t seed);

// Rewrites read values so that the pattern occurs. Candidate rewrites (one
// read changed, or two reads swapped) are tried in seeded order and kept only
// if the native detector confirms the pattern. A candidate on which the check
// under weakest_model_with(pattern) reports this pattern first is preferred
// within a bounded window after the first confirmed one.
// Throws Error{CannotInject} when no candidate works and Error{NotExecuted}
// for unvalued input.
History mutate_violation(const History& history, Pattern pattern, std::uint64_t seed);

}  // namespace causalcheck
