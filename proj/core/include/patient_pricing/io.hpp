#pragma once

#include "patient_pricing/types.hpp"

#include <iosfwd>
#include <string>

namespace patient_pricing {

/// Distribution file:
///   {"w_max": 3, "support": [{"v": "1/3", "w": 3, "prob": "1/3"}, ...]}
/// Values and probabilities are rational strings ("a/b", "n", or a finite
/// decimal). Duplicate buyer types are merged by summing probabilities; a
/// note is written to `warnings` when that happens.
FiniteDistribution parse_distribution(const std::string& text, std::ostream* warnings = nullptr);
std::string serialize_distribution(const FiniteDistribution& dist);

/// Pure strategy file: {"prices": ["1", "2/3", "1/3"]}
PurePricing parse_pure_strategy(const std::string& text);
std::string serialize_pure_strategy(const PurePricing& pricing);

/// Mixed strategy file:
///   {"alphabet": ["1/3", "2/3", "1"],
///    "support": [{"pricing": ["2/3", "1/3"], "prob": "1/3"}, ...]}
MixedPricing parse_mixed_strategy(const std::string& text);
std::string serialize_mixed_strategy(const MixedPricing& pricing);

std::string read_file(const std::string& path);
/// Writes to a temporary file in the target directory, then renames.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace patient_pricing
