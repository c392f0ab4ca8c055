#include "patient_pricing/types.hpp"

#include "patient_pricing/errors.hpp"

#include <algorithm>
#include <map>

namespace patient_pricing {

bool type_less(const BuyerType& a, const BuyerType& b) {
  if (a.patience != b.patience) return a.patience < b.patience;
  return a.value < b.value;
}

FiniteDistribution::FiniteDistribution(int w_max,
                                       std::vector<std::pair<BuyerType, Rational>> support)
    : w_max_(w_max), support_(std::move(support)) {
  if (w_max_ < 1) throw ValidationError("w_max must be at least 1");
  if (support_.empty()) throw ValidationError("distribution support is empty");

  std::sort(support_.begin(), support_.end(),
            [](const auto& a, const auto& b) { return type_less(a.first, b.first); });

  Rational total = 0;
  for (const auto& [type, prob] : support_) {
    if (!in_unit_interval(type.value)) {
      throw ValidationError("buyer value " + format_rational(type.value) + " outside [0, 1]");
    }
    if (type.patience < 1 || type.patience > w_max_) {
      throw ValidationError("patience " + std::to_string(type.patience) + " outside [1, " +
                            std::to_string(w_max_) + "]");
    }
    if (prob <= 0) {
      throw ValidationError("probability " + format_rational(prob) + " is not strictly positive");
    }
    total += prob;
  }
  for (std::size_t i = 1; i < support_.size(); ++i) {
    if (support_[i].first == support_[i - 1].first) {
      throw ValidationError("duplicate buyer type (v=" + format_rational(support_[i].first.value) +
                            ", w=" + std::to_string(support_[i].first.patience) + ")");
    }
  }
  if (total != 1) {
    throw ValidationError("probabilities sum to " + format_rational(total) + " != 1");
  }

  for (const auto& [type, prob] : support_) values_.push_back(type.value);
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

std::vector<Rational> FiniteDistribution::values_with_patience(int w) const {
  std::vector<Rational> out;
  for (const auto& [type, prob] : support_) {
    if (type.patience == w) out.push_back(type.value);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PurePricing::PurePricing(std::vector<Rational> prices) : prices_(std::move(prices)) {
  if (prices_.empty()) throw ValidationError("pricing has no steps");
  for (const Rational& p : prices_) {
    if (!in_unit_interval(p)) {
      throw ValidationError("price " + format_rational(p) + " outside [0, 1]");
    }
  }
}

PurePricing PurePricing::fixed(const Rational& price, int length) {
  if (length < 1) throw ValidationError("pricing length must be at least 1");
  return PurePricing(std::vector<Rational>(static_cast<std::size_t>(length), price));
}

bool PurePricing::non_increasing() const {
  for (std::size_t i = 1; i < prices_.size(); ++i) {
    if (prices_[i] > prices_[i - 1]) return false;
  }
  return true;
}

PurePricing monotonize_pure(const PurePricing& p) {
  std::vector<Rational> out = p.prices();
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] > out[i - 1]) out[i] = out[i - 1];
  }
  return PurePricing(std::move(out));
}

MixedPricing::MixedPricing(std::vector<Rational> alphabet,
                           std::vector<std::pair<PurePricing, Rational>> support)
    : alphabet_(std::move(alphabet)), support_(std::move(support)) {
  if (alphabet_.empty()) throw ValidationError("mixed pricing has an empty alphabet");
  if (!std::is_sorted(alphabet_.begin(), alphabet_.end())) {
    std::sort(alphabet_.begin(), alphabet_.end());
  }
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  for (const Rational& p : alphabet_) {
    if (!in_unit_interval(p)) {
      throw ValidationError("alphabet price " + format_rational(p) + " outside [0, 1]");
    }
  }
  if (support_.empty()) throw ValidationError("mixed pricing has an empty support");

  std::sort(support_.begin(), support_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const int len = support_.front().first.length();
  Rational total = 0;
  for (const auto& [pricing, prob] : support_) {
    if (pricing.length() != len) {
      throw ValidationError("support pricings have inconsistent lengths");
    }
    if (prob <= 0) {
      throw ValidationError("pricing probability " + format_rational(prob) +
                            " is not strictly positive");
    }
    for (const Rational& price : pricing.prices()) {
      if (!std::binary_search(alphabet_.begin(), alphabet_.end(), price)) {
        throw ValidationError("price " + format_rational(price) + " not in the alphabet");
      }
    }
    total += prob;
  }
  for (std::size_t i = 1; i < support_.size(); ++i) {
    if (support_[i].first == support_[i - 1].first) {
      throw ValidationError("duplicate pricing in mixed support");
    }
  }
  if (total != 1) {
    throw ValidationError("pricing probabilities sum to " + format_rational(total) + " != 1");
  }
}

MixedPricing MixedPricing::point_mass(PurePricing p) {
  std::vector<Rational> alphabet = p.prices();
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  std::vector<std::pair<PurePricing, Rational>> support;
  support.emplace_back(std::move(p), Rational(1));
  return MixedPricing(std::move(alphabet), std::move(support));
}

FiniteDistribution empirical_distribution(const std::vector<BuyerType>& sample, int w_max) {
  if (sample.empty()) throw ValidationError("empty sample");
  std::map<std::pair<int, Rational>, long> counts;
  for (const BuyerType& z : sample) {
    if (z.patience > w_max) {
      throw ValidationError("sample patience " + std::to_string(z.patience) + " exceeds w_max " +
                            std::to_string(w_max));
    }
    counts[{z.patience, z.value}] += 1;
  }
  const Rational m(static_cast<long>(sample.size()));
  std::vector<std::pair<BuyerType, Rational>> support;
  support.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    support.push_back({BuyerType{key.second, key.first}, Rational(count) / m});
  }
  return FiniteDistribution(w_max, std::move(support));
}

}  // namespace patient_pricing
