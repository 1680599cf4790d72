#pragma once

// k-nearest-neighbor disclosure recommendations.
//
// The attribute being recommended is always excluded from the distance used
// to find neighbors; otherwise the query's own setting would leak into the
// retrieval and the neighbors would simply echo it back.

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "privrec/error.hpp"
#include "privrec/ingest.hpp"
#include "privrec/profile.hpp"

namespace privrec {

enum class DistanceMode { BinaryDisclosure, MixedCloseness };
enum class Policy { Majority, Strict };

inline std::string_view to_string(DistanceMode m) { return m == DistanceMode::BinaryDisclosure ? "binary" : "mixed"; }
inline std::string_view to_string(Policy p) { return p == Policy::Majority ? "majority" : "strict"; }

inline std::optional<DistanceMode> parse_distance_mode(std::string_view s) {
  const auto key = text::lower(s);
  if (key == "binary" || key == "binarydisclosure") return DistanceMode::BinaryDisclosure;
  if (key == "mixed" || key == "mixedcloseness") return DistanceMode::MixedCloseness;
  return std::nullopt;
}

inline std::optional<Policy> parse_policy(std::string_view s) {
  const auto key = text::lower(s);
  if (key == "majority") return Policy::Majority;
  if (key == "strict") return Policy::Strict;
  return std::nullopt;
}

struct DistanceConfig {
  DistanceMode mode = DistanceMode::BinaryDisclosure;
  std::array<double, kAttributeCount> weights = filled(1.0);
  double age_weight = 1.0;            // MixedCloseness only
  std::optional<double> age_range;    // MixedCloseness only; resolved from the pool when unset
  std::optional<Attribute> excluded;  // target attribute, contributes nothing

  static constexpr std::array<double, kAttributeCount> filled(double w) {
    std::array<double, kAttributeCount> a{};
    for (auto& x : a) x = w;
    return a;
  }

  double weight(Attribute a) const { return excluded == a ? 0.0 : weights[index_of(a)]; }

  double total_weight() const {
    double sum = 0.0;
    for (auto a : kAllAttributes) sum += weight(a);
    if (mode == DistanceMode::MixedCloseness) sum += age_weight;
    return sum;
  }

  void validate() const {
    for (auto w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("attribute weights must be finite and non-negative");
    }
    if (!(age_weight >= 0.0) || !std::isfinite(age_weight)) throw ConfigError("age weight must be non-negative");
    if (!(total_weight() > 0.0)) throw ConfigError("at least one attribute weight must be positive");
    if (age_range && !(*age_range > 0.0)) throw ConfigError("age_range must be positive");
  }
};

inline DistanceConfig distance_config_from_json(const nlohmann::json& j, DistanceConfig cfg = {}) {
  try {
    if (j.contains("mode")) {
      auto m = parse_distance_mode(j.at("mode").get<std::string>());
      if (!m) throw ConfigError("unknown distance mode");
      cfg.mode = *m;
    }
    if (j.contains("weights")) {
      for (const auto& [name, w] : j.at("weights").items()) {
        if (name == "age") {
          cfg.age_weight = w.get<double>();
          continue;
        }
        auto a = parse_attribute(name);
        if (!a) throw ConfigError("unknown attribute '" + name + "' in weights");
        cfg.weights[index_of(*a)] = w.get<double>();
      }
    }
    if (j.contains("age_range")) cfg.age_range = j.at("age_range").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("distance config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

namespace detail {

inline double jaccard_distance(const std::vector<InterestItem>& a, const std::vector<InterestItem>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->interest_id < j->interest_id) {
      ++i;
    } else if (j->interest_id < i->interest_id) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const auto uni = a.size() + b.size() - common;
  return 1.0 - static_cast<double>(common) / static_cast<double>(uni);
}

inline double closeness_term(const UserVector& a, const UserVector& b, Attribute attr) {
  const bool da = is_disclosed(a, attr);
  const bool db = is_disclosed(b, attr);
  if (da != db) return 1.0;
  if (!da) return 0.0;
  if (attr == Attribute::Interests) return jaccard_distance(a.interests, b.interests);
  return attribute_value(a.profile, attr) == attribute_value(b.profile, attr) ? 0.0 : 1.0;
}

}  // namespace detail

// Weighted mean of per-attribute terms in [0, 1]. BinaryDisclosure compares
// disclosure indicators only; MixedCloseness also compares present values and
// adds an age term. Ages are measured against `reference_year`.
inline double pairwise_distance(const UserVector& a, const UserVector& b, const DistanceConfig& cfg,
                                int reference_year = kDefaultReferenceYear) {
  cfg.validate();
  const double total = cfg.total_weight();
  double sum = 0.0;
  if (cfg.mode == DistanceMode::BinaryDisclosure) {
    const auto da = disclosure_vector(a);
    const auto db = disclosure_vector(b);
    for (auto attr : kAllAttributes) {
      if (da[attr] != db[attr]) sum += cfg.weight(attr);
    }
    return sum / total;
  }
  if (!cfg.age_range) throw ConfigError("MixedCloseness distance needs an age_range");
  for (auto attr : kAllAttributes) {
    const double w = cfg.weight(attr);
    if (w > 0.0) sum += w * detail::closeness_term(a, b, attr);
  }
  if (cfg.age_weight > 0.0) {
    const double age_a = compute_age(a.profile.birth_year, reference_year);
    const double age_b = compute_age(b.profile.birth_year, reference_year);
    sum += cfg.age_weight * std::min(1.0, std::abs(age_a - age_b) / *cfg.age_range);
  }
  return sum / total;
}

// Fills an unset age_range with (max age - min age) over the pool and query,
// or 1 when every age is equal.
inline DistanceConfig resolve_age_range(DistanceConfig cfg, const UserVector& query,
                                        std::span<const UserVector> pool) {
  if (cfg.age_range) return cfg;
  int lo = query.profile.birth_year;
  int hi = lo;
  for (const auto& u : pool) {
    lo = std::min(lo, u.profile.birth_year);
    hi = std::max(hi, u.profile.birth_year);
  }
  cfg.age_range = hi > lo ? static_cast<double>(hi - lo) : 1.0;
  return cfg;
}

struct Neighbor {
  std::string user_id;
  double distance = 0.0;
  std::optional<bool> target_disclosed;  // set when the config names a target

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// The k closest pool members ordered by (distance, user_id). A pool member
// sharing the query's user_id is never returned.
inline std::vector<Neighbor> nearest_neighbors(const UserVector& query, std::span<const UserVector> pool,
                                               std::size_t k, const DistanceConfig& cfg,
                                               int reference_year = kDefaultReferenceYear) {
  if (k == 0) throw InvalidInput("k must be positive");
  const auto resolved = resolve_age_range(cfg, query, pool);
  resolved.validate();
  std::vector<Neighbor> all;
  all.reserve(pool.size());
  for (const auto& u : pool) {
    if (u.user_id() == query.user_id()) continue;
    Neighbor n{u.user_id(), pairwise_distance(query, u, resolved, reference_year), std::nullopt};
    if (cfg.excluded) n.target_disclosed = is_disclosed(u, *cfg.excluded);
    all.push_back(std::move(n));
  }
  if (k > all.size()) {
    throw InvalidInput("k = " + std::to_string(k) + " exceeds the " + std::to_string(all.size()) +
                       " available candidates");
  }
  auto by_distance = [](const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.user_id < b.user_id;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), by_distance);
  all.resize(k);
  return all;
}

inline std::vector<Neighbor> nearest_neighbors(const UserVector& query, const Dataset& d, std::size_t k,
                                               const DistanceConfig& cfg) {
  return nearest_neighbors(query, std::span<const UserVector>(d.users), k, cfg, d.metadata.reference_year);
}

enum class Advice { Hide, KeepCurrent };

inline std::string_view to_string(Advice a) { return a == Advice::Hide ? "Hide" : "KeepCurrent"; }

struct Recommendation {
  Attribute attribute;
  Advice advice = Advice::KeepCurrent;
  std::vector<Neighbor> neighbors;
  Policy policy = Policy::Majority;
  bool query_disclosed = false;
};

inline bool policy_hides(Policy policy, std::size_t hiding, std::size_t k) {
  return policy == Policy::Majority ? 2 * hiding > k : hiding >= 1;
}

// Tighten-only: an attribute the query does not disclose is always KeepCurrent.
inline Recommendation recommend_disclosure(const UserVector& query, const Dataset& d, Attribute attribute,
                                           std::size_t k, Policy policy, DistanceConfig cfg = {}) {
  cfg.excluded = attribute;
  Recommendation rec;
  rec.attribute = attribute;
  rec.policy = policy;
  rec.query_disclosed = is_disclosed(query, attribute);
  rec.neighbors = nearest_neighbors(query, d, k, cfg);
  const auto hiding = static_cast<std::size_t>(std::count_if(
      rec.neighbors.begin(), rec.neighbors.end(), [](const Neighbor& n) { return !n.target_disclosed.value(); }));
  rec.advice = rec.query_disclosed && policy_hides(policy, hiding, k) ? Advice::Hide : Advice::KeepCurrent;
  return rec;
}

inline std::vector<Recommendation> recommend_all(const UserVector& query, const Dataset& d, std::size_t k,
                                                 Policy policy, const DistanceConfig& cfg = {},
                                                 std::span<const Attribute> attributes = kAllAttributes) {
  std::vector<Recommendation> out;
  out.reserve(attributes.size());
  for (auto a : kAllAttributes) {  // fixed attribute order regardless of the order requested
    if (std::find(attributes.begin(), attributes.end(), a) == attributes.end()) continue;
    out.push_back(recommend_disclosure(query, d, a, k, policy, cfg));
  }
  return out;
}

inline nlohmann::json recommendations_to_json(std::string_view user_id, const std::vector<Recommendation>& recs,
                                              std::size_t k, DistanceMode mode) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& r : recs) {
    nlohmann::json neighbors = nlohmann::json::array();
    for (const auto& n : r.neighbors) {
      neighbors.push_back(
          {{"user_id", n.user_id}, {"distance", n.distance}, {"disclosed", n.target_disclosed.value_or(false)}});
    }
    items.push_back({{"attribute", to_string(r.attribute)},
                     {"advice", to_string(r.advice)},
                     {"policy", to_string(r.policy)},
                     {"currently_disclosed", r.query_disclosed},
                     {"neighbors", neighbors}});
  }
  return {{"user_id", user_id}, {"k", k}, {"mode", to_string(mode)}, {"recommendations", items}};
}

inline std::string render_recommendations(std::string_view user_label, const std::vector<Recommendation>& recs) {
  std::ostringstream os;
  os << "Disclosure recommendations for " << user_label << "\n";
  for (const auto& r : recs) {
    os << "  " << std::left << std::setw(13) << to_string(r.attribute) << std::setw(12) << to_string(r.advice);
    if (!r.query_disclosed) {
      os << "not disclosed; nothing to tighten\n";
      continue;
    }
    std::size_t hiding = 0;
    for (const auto& n : r.neighbors) hiding += n.target_disclosed.value_or(false) ? 0 : 1;
    os << hiding << "/" << r.neighbors.size() << " neighbors hide it (" << to_string(r.policy) << "; ";
    for (std::size_t i = 0; i < r.neighbors.size(); ++i) {
      if (i) os << ", ";
      std::ostringstream d;
      d << std::fixed << std::setprecision(3) << r.neighbors[i].distance;
      os << r.neighbors[i].user_id << " d=" << d.str();
    }
    os << ")\n";
  }
  return os.str();
}

}  // namespace privrec
