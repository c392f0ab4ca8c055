#include "patient_pricing/sampling.hpp"

namespace patient_pricing {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = master;
  std::uint64_t seed = splitmix64(state);
  state = seed ^ a;
  seed = splitmix64(state);
  state = seed ^ b;
  seed = splitmix64(state);
  return std::mt19937_64(seed);
}

TypeSampler::TypeSampler(const FiniteDistribution& dist) : dist_(&dist) {
  Rational running = 0;
  cumulative_.reserve(dist.support().size());
  for (const auto& [type, prob] : dist.support()) {
    running += prob;
    cumulative_.push_back(running);
  }
}

const BuyerType& TypeSampler::operator()(std::mt19937_64& rng) const {
  const std::uint64_t draw = rng();
  const Rational u(Integer(draw), Integer(1) << 64);
  for (std::size_t i = 0; i + 1 < cumulative_.size(); ++i) {
    if (u < cumulative_[i]) return dist_->support()[i].first;
  }
  return dist_->support().back().first;
}

std::vector<BuyerType> sample_types(const FiniteDistribution& dist, std::size_t count,
                                    std::mt19937_64& rng) {
  TypeSampler sampler(dist);
  std::vector<BuyerType> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler(rng));
  return out;
}

}  // namespace patient_pricing
