#include "patient_pricing/io.hpp"

#include "patient_pricing/errors.hpp"

#include <json.hpp>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace patient_pricing {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ValidationError("JSON parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
  }
}

Rational rational_field(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.get<long long>()));
  throw ValidationError(where + " must be a rational string such as \"2/3\", \"0.25\" or \"1\"");
}

int int_field(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ValidationError(where + " must be an integer");
  return j.get<int>();
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(where + " is missing required key \"" + key + "\"");
  return *it;
}

std::vector<Rational> rational_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + " must be an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(rational_field(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json rational_array_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const Rational& q : values) out.push_back(format_rational(q));
  return out;
}

}  // namespace

FiniteDistribution parse_distribution(const std::string& text, std::ostream* warnings) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw ValidationError("distribution document must be a JSON object");
  const int w_max = int_field(require(doc, "w_max", "distribution"), "\"w_max\"");
  const json& support = require(doc, "support", "distribution");
  if (!support.is_array() || support.empty()) {
    throw ValidationError("\"support\" must be a non-empty array");
  }

  std::map<std::pair<int, Rational>, Rational> merged;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const std::string where = "support[" + std::to_string(i) + "]";
    const json& entry = support[i];
    if (!entry.is_object()) throw ValidationError(where + " must be an object");
    Rational v = rational_field(require(entry, "v", where), where + ".v");
    int w = int_field(require(entry, "w", where), where + ".w");
    Rational prob = rational_field(require(entry, "prob", where), where + ".prob");
    auto key = std::make_pair(w, v);
    auto [it, inserted] = merged.emplace(key, prob);
    if (!inserted) {
      it->second += prob;
      if (warnings != nullptr) {
        *warnings << "warning: duplicate buyer type (v=" << format_rational(v) << ", w=" << w
                  << ") merged by summing probabilities\n";
      }
    }
  }

  std::vector<std::pair<BuyerType, Rational>> entries;
  entries.reserve(merged.size());
  for (const auto& [key, prob] : merged) {
    entries.push_back({BuyerType{key.second, key.first}, prob});
  }
  return FiniteDistribution(w_max, std::move(entries));
}

std::string serialize_distribution(const FiniteDistribution& dist) {
  json doc;
  doc["w_max"] = dist.w_max();
  json support = json::array();
  for (const auto& [type, prob] : dist.support()) {
    support.push_back({{"v", format_rational(type.value)},
                       {"w", type.patience},
                       {"prob", format_rational(prob)}});
  }
  doc["support"] = std::move(support);
  return doc.dump(2) + "\n";
}

PurePricing parse_pure_strategy(const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw ValidationError("pure strategy document must be a JSON object");
  return PurePricing(rational_array(require(doc, "prices", "pure strategy"), "\"prices\""));
}

std::string serialize_pure_strategy(const PurePricing& pricing) {
  json doc;
  doc["prices"] = rational_array_json(pricing.prices());
  return doc.dump(2) + "\n";
}

MixedPricing parse_mixed_strategy(const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw ValidationError("mixed strategy document must be a JSON object");
  std::vector<Rational> alphabet =
      rational_array(require(doc, "alphabet", "mixed strategy"), "\"alphabet\"");
  const json& support = require(doc, "support", "mixed strategy");
  if (!support.is_array() || support.empty()) {
    throw ValidationError("\"support\" must be a non-empty array");
  }
  std::vector<std::pair<PurePricing, Rational>> entries;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const std::string where = "support[" + std::to_string(i) + "]";
    const json& entry = support[i];
    if (!entry.is_object()) throw ValidationError(where + " must be an object");
    PurePricing pricing(rational_array(require(entry, "pricing", where), where + ".pricing"));
    Rational prob = rational_field(require(entry, "prob", where), where + ".prob");
    entries.emplace_back(std::move(pricing), std::move(prob));
  }
  return MixedPricing(std::move(alphabet), std::move(entries));
}

std::string serialize_mixed_strategy(const MixedPricing& pricing) {
  json doc;
  doc["alphabet"] = rational_array_json(pricing.alphabet());
  json support = json::array();
  for (const auto& [p, prob] : pricing.support()) {
    support.push_back(
        {{"pricing", rational_array_json(p.prices())}, {"prob", format_rational(prob)}});
  }
  doc["support"] = std::move(support);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write file: " + tmp.string());
    out << content;
    if (!out.flush()) throw ValidationError("failed writing file: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace patient_pricing
