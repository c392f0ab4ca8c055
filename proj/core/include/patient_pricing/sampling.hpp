#pragma once

#include "patient_pricing/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace patient_pricing {

/// splitmix64 step; used only to derive independent generator seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic per-task stream: the master seed and the two task indices
/// are folded through splitmix64 and seed a std::mt19937_64.
std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t a = 0, std::uint64_t b = 0);

/// Exact inverse-CDF sampling: one 64-bit draw scaled to [0, 1) is compared
/// against the exact cumulative probabilities, so the core arithmetic stays
/// rational and the bias is below 2^-64 per draw.
class TypeSampler {
 public:
  explicit TypeSampler(const FiniteDistribution& dist);
  const BuyerType& operator()(std::mt19937_64& rng) const;

 private:
  const FiniteDistribution* dist_;
  std::vector<Rational> cumulative_;
};

std::vector<BuyerType> sample_types(const FiniteDistribution& dist, std::size_t count,
                                    std::mt19937_64& rng);

}  // namespace patient_pricing
