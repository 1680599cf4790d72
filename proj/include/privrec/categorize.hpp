#pragma once

// Privacy-category assignment: the album-visibility rule used to label
// users, and an information-gain decision tree that predicts the label from
// profile attributes and interests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "privrec/error.hpp"
#include "privrec/ingest.hpp"
#include "privrec/profile.hpp"

namespace privrec {

// No albums -> Fundamentalist; more than half FRIENDS or CUSTOM -> Pragmatic;
// otherwise Unconcerned. NETWORKS_FRIENDS counts only in the denominator.
inline PrivacyCategory rule_label(const AlbumSummary& s) {
  if (s.total() == 0) return PrivacyCategory::Fundamentalist;
  if (2 * (s.n_friends() + s.n_custom()) > s.total()) return PrivacyCategory::Pragmatic;
  return PrivacyCategory::Unconcerned;
}

struct LabeledUser {
  UserVector vector;
  PrivacyCategory category;
};

inline std::vector<LabeledUser> label_dataset(const Dataset& d) {
  std::vector<LabeledUser> out;
  out.reserve(d.users.size());
  for (const auto& u : d.users) out.push_back({u, rule_label(u.album_summary)});
  return out;
}

enum class NumericSplitRule { Midpoints };
enum class TieBreak { LowestFeatureThenThreshold };

struct TreeConfig {
  std::optional<std::size_t> max_depth;
  std::size_t min_leaf = 2;
  std::size_t top_interest_features = 25;
  NumericSplitRule numeric_split = NumericSplitRule::Midpoints;
  TieBreak tie_break = TieBreak::LowestFeatureThenThreshold;

  void validate() const {
    if (min_leaf < 1) throw ConfigError("min_leaf must be at least 1");
    if (max_depth && *max_depth < 1) throw ConfigError("max_depth must be positive");
  }
};

enum class FeatureKind { Age, Categorical, Interest };

struct TreeFeature {
  FeatureKind kind = FeatureKind::Categorical;
  std::string name;
  Attribute attribute = Attribute::Gender;  // Categorical only
  std::string interest_id;                  // Interest only

  friend bool operator==(const TreeFeature&, const TreeFeature&) = default;
};

struct TreeNode {
  std::array<std::size_t, 3> class_counts{};
  std::optional<std::size_t> feature;  // unset for leaves
  double threshold = 0.0;              // Age: branch 0 is "< threshold", branch 1 is ">= threshold"
  std::vector<std::pair<std::string, std::size_t>> branches;  // value -> child node, sorted by value
  std::optional<std::size_t> missing_child;

  bool is_leaf() const { return !feature.has_value(); }

  std::size_t support() const { return class_counts[0] + class_counts[1] + class_counts[2]; }

  // Ties resolve to the earliest category.
  PrivacyCategory majority() const {
    std::size_t best = 0;
    for (std::size_t c = 1; c < 3; ++c) {
      if (class_counts[c] > class_counts[best]) best = c;
    }
    return static_cast<PrivacyCategory>(best);
  }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  std::vector<TreeFeature> features;
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  int reference_year = kDefaultReferenceYear;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

namespace detail {

inline constexpr std::array<Attribute, 8> kTreeCategoricalAttributes{
    Attribute::Gender,   Attribute::Education, Attribute::Degree,       Attribute::Hometown,
    Attribute::Location, Attribute::Political, Attribute::Relationship, Attribute::Religion,
};

inline std::optional<std::string> categorical_value(const TreeFeature& f, const UserVector& v) {
  if (f.kind == FeatureKind::Interest) return std::string(v.has_interest(f.interest_id) ? "yes" : "no");
  return attribute_value(v.profile, f.attribute);
}

inline double entropy(const std::array<std::size_t, 3>& counts) {
  const double n = static_cast<double>(counts[0] + counts[1] + counts[2]);
  if (n == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

struct Row {
  const UserVector* vector;
  double age;
  std::size_t label;
};

struct SplitChoice {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = -1.0;
};

class TreeBuilder {
 public:
  TreeBuilder(DecisionTree& tree, const TreeConfig& cfg) : tree_(tree), cfg_(cfg) {}

  std::size_t build(const std::vector<Row>& rows, std::size_t depth, std::vector<bool> used) {
    const std::size_t id = tree_.nodes.size();
    tree_.nodes.emplace_back();
    const auto counts = count(rows);
    tree_.nodes[id].class_counts = counts;

    const bool pure = std::count_if(counts.begin(), counts.end(), [](auto c) { return c > 0; }) <= 1;
    if (pure || (cfg_.max_depth && depth >= *cfg_.max_depth) || rows.size() < 2 * cfg_.min_leaf) return id;

    const auto choice = best_split(rows, counts, used);
    if (!choice) return id;

    const auto& feature = tree_.features[choice->feature];
    tree_.nodes[id].feature = choice->feature;
    if (feature.kind == FeatureKind::Age) {
      std::vector<Row> below, above;
      for (const auto& r : rows) (r.age < choice->threshold ? below : above).push_back(r);
      tree_.nodes[id].threshold = choice->threshold;
      const auto lo = build(below, depth + 1, used);
      const auto hi = build(above, depth + 1, used);
      tree_.nodes[id].branches = {{"<", lo}, {">=", hi}};
      return id;
    }

    used[choice->feature] = true;
    auto [groups, missing] = partition(rows, feature);
    std::vector<std::pair<std::string, std::size_t>> branches;
    for (const auto& [value, members] : groups) branches.emplace_back(value, build(members, depth + 1, used));
    std::optional<std::size_t> missing_child;
    if (!missing.empty()) missing_child = build(missing, depth + 1, used);
    tree_.nodes[id].branches = std::move(branches);
    tree_.nodes[id].missing_child = missing_child;
    return id;
  }

 private:
  static std::array<std::size_t, 3> count(const std::vector<Row>& rows) {
    std::array<std::size_t, 3> c{};
    for (const auto& r : rows) ++c[r.label];
    return c;
  }

  static std::pair<std::map<std::string, std::vector<Row>>, std::vector<Row>> partition(const std::vector<Row>& rows,
                                                                                        const TreeFeature& f) {
    std::map<std::string, std::vector<Row>> groups;
    std::vector<Row> missing;
    for (const auto& r : rows) {
      if (auto v = categorical_value(f, *r.vector)) {
        groups[*v].push_back(r);
      } else {
        missing.push_back(r);
      }
    }
    return {std::move(groups), std::move(missing)};
  }

  // Splits with zero gain are admissible: they still separate rows, which is
  // what lets consistent data reach full training accuracy.
  std::optional<SplitChoice> best_split(const std::vector<Row>& rows, const std::array<std::size_t, 3>& counts,
                                        const std::vector<bool>& used) const {
    constexpr double kEps = 1e-12;
    const double parent = entropy(counts);
    const double n = static_cast<double>(rows.size());
    std::optional<SplitChoice> best;
    auto consider = [&](std::size_t feature, double threshold, double gain) {
      if (!best || gain > best->gain + kEps) best = SplitChoice{feature, threshold, gain};
    };

    for (std::size_t f = 0; f < tree_.features.size(); ++f) {
      const auto& feature = tree_.features[f];
      if (feature.kind == FeatureKind::Age) {
        std::vector<std::pair<double, std::size_t>> values;
        values.reserve(rows.size());
        for (const auto& r : rows) values.emplace_back(r.age, r.label);
        std::sort(values.begin(), values.end());
        std::array<std::size_t, 3> left{};
        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
          ++left[values[i].second];
          if (values[i].first == values[i + 1].first) continue;
          const std::size_t nl = i + 1;
          const std::size_t nr = values.size() - nl;
          if (nl < cfg_.min_leaf || nr < cfg_.min_leaf) continue;
          std::array<std::size_t, 3> right{};
          for (std::size_t c = 0; c < 3; ++c) right[c] = counts[c] - left[c];
          const double gain = parent - (static_cast<double>(nl) / n) * entropy(left) -
                              (static_cast<double>(nr) / n) * entropy(right);
          consider(f, (values[i].first + values[i + 1].first) / 2.0, gain);
        }
        continue;
      }
      if (used[f]) continue;
      auto [groups, missing] = partition(rows, feature);
      const std::size_t children = groups.size() + (missing.empty() ? 0 : 1);
      if (children < 2) continue;
      bool small = !missing.empty() && missing.size() < cfg_.min_leaf;
      double remainder = 0.0;
      for (const auto& [value, members] : groups) {
        small = small || members.size() < cfg_.min_leaf;
        remainder += (static_cast<double>(members.size()) / n) * entropy(count(members));
      }
      if (small) continue;
      if (!missing.empty()) remainder += (static_cast<double>(missing.size()) / n) * entropy(count(missing));
      consider(f, 0.0, parent - remainder);
    }
    return best;
  }

  DecisionTree& tree_;
  const TreeConfig& cfg_;
};

}  // namespace detail

// Age first, then the categorical profile attributes in attribute order, then
// one has/has-not feature per most common interest.
inline std::vector<TreeFeature> tree_features(const std::vector<LabeledUser>& data, std::size_t interest_budget) {
  std::vector<TreeFeature> features;
  features.push_back({FeatureKind::Age, "age", Attribute::Gender, ""});
  for (auto a : detail::kTreeCategoricalAttributes) {
    features.push_back({FeatureKind::Categorical, std::string(to_string(a)), a, ""});
  }
  if (interest_budget > 0) {
    Dataset d;
    d.users.reserve(data.size());
    for (const auto& l : data) d.users.push_back(l.vector);
    for (const auto& r : top_interests(d, interest_budget)) {
      features.push_back({FeatureKind::Interest, "likes " + r.display_name, Attribute::Interests, r.interest_id});
    }
  }
  return features;
}

inline DecisionTree train_decision_tree(const std::vector<LabeledUser>& data, const TreeConfig& cfg,
                                        int reference_year = kDefaultReferenceYear) {
  cfg.validate();
  if (data.empty()) throw InvalidInput("cannot train a decision tree on an empty dataset");
  DecisionTree tree;
  tree.reference_year = reference_year;
  tree.features = tree_features(data, cfg.top_interest_features);
  std::vector<detail::Row> rows;
  rows.reserve(data.size());
  for (const auto& l : data) {
    rows.push_back({&l.vector, static_cast<double>(compute_age(l.vector.profile.birth_year, reference_year)),
                    static_cast<std::size_t>(l.category)});
  }
  detail::TreeBuilder builder(tree, cfg);
  builder.build(rows, 0, std::vector<bool>(tree.features.size(), false));
  return tree;
}

inline PrivacyCategory predict_category(const DecisionTree& tree, const UserVector& v) {
  if (tree.nodes.empty()) throw InvalidInput("decision tree has no nodes");
  std::size_t id = 0;
  while (true) {
    const auto& node = tree.nodes[id];
    if (node.is_leaf()) return node.majority();
    const auto& feature = tree.features[*node.feature];
    if (feature.kind == FeatureKind::Age) {
      const double age = compute_age(v.profile.birth_year, tree.reference_year);
      id = node.branches[age < node.threshold ? 0 : 1].second;
      continue;
    }
    const auto value = detail::categorical_value(feature, v);
    if (!value) {
      if (!node.missing_child) return node.majority();
      id = *node.missing_child;
      continue;
    }
    auto it = std::find_if(node.branches.begin(), node.branches.end(),
                           [&](const auto& b) { return b.first == *value; });
    if (it == node.branches.end()) return node.majority();
    id = it->second;
  }
}

namespace detail {

inline std::string format_threshold(double t) {
  std::ostringstream os;
  os << std::setprecision(10) << t;
  return os.str();
}

inline std::string format_counts(const TreeNode& node) {
  std::ostringstream os;
  os << "(" << to_string(PrivacyCategory::Fundamentalist) << "=" << node.class_counts[0] << " "
     << to_string(PrivacyCategory::Pragmatic) << "=" << node.class_counts[1] << " "
     << to_string(PrivacyCategory::Unconcerned) << "=" << node.class_counts[2] << ")";
  return os.str();
}

inline void export_node(const DecisionTree& tree, std::size_t id, const std::string& condition, std::size_t indent,
                        std::ostringstream& os) {
  const auto& node = tree.nodes[id];
  os << std::string(2 * indent, ' ');
  if (!condition.empty()) os << condition << " -> ";
  if (node.is_leaf()) {
    os << "leaf: " << to_string(node.majority()) << " " << format_counts(node) << "\n";
    return;
  }
  const auto& f = tree.features[*node.feature];
  if (f.kind == FeatureKind::Age) {
    const auto t = format_threshold(node.threshold);
    os << "split " << f.name << " at " << t << " " << format_counts(node) << "\n";
    export_node(tree, node.branches[0].second, f.name + " < " + t, indent + 1, os);
    export_node(tree, node.branches[1].second, f.name + " >= " + t, indent + 1, os);
    return;
  }
  os << "split " << f.name << " " << format_counts(node) << "\n";
  for (const auto& [value, child] : node.branches) export_node(tree, child, f.name + " = " + value, indent + 1, os);
  if (node.missing_child) export_node(tree, *node.missing_child, f.name + " = <missing>", indent + 1, os);
}

}  // namespace detail

inline std::string export_tree(const DecisionTree& tree) {
  std::ostringstream os;
  if (!tree.nodes.empty()) detail::export_node(tree, 0, "", 0, os);
  return os.str();
}

inline std::string_view to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::Age: return "age";
    case FeatureKind::Categorical: return "categorical";
    case FeatureKind::Interest: return "interest";
  }
  return "";
}

inline nlohmann::json tree_to_json(const DecisionTree& tree) {
  nlohmann::json features = nlohmann::json::array();
  for (const auto& f : tree.features) {
    nlohmann::json j{{"kind", to_string(f.kind)}, {"name", f.name}};
    if (f.kind == FeatureKind::Categorical) j["attribute"] = to_string(f.attribute);
    if (f.kind == FeatureKind::Interest) j["interest_id"] = f.interest_id;
    features.push_back(std::move(j));
  }
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : tree.nodes) {
    nlohmann::json j{{"class_counts", n.class_counts}};
    if (n.is_leaf()) {
      j["type"] = "leaf";
      j["prediction"] = to_string(n.majority());
    } else {
      j["type"] = "split";
      j["feature"] = *n.feature;
      if (tree.features[*n.feature].kind == FeatureKind::Age) j["threshold"] = n.threshold;
      nlohmann::json branches = nlohmann::json::array();
      for (const auto& [value, child] : n.branches) branches.push_back({{"value", value}, {"child", child}});
      j["branches"] = std::move(branches);
      if (n.missing_child) j["missing_child"] = *n.missing_child;
    }
    nodes.push_back(std::move(j));
  }
  return {{"format", "privrec-tree-v1"},
          {"reference_year", tree.reference_year},
          {"features", features},
          {"nodes", nodes}};
}

inline DecisionTree tree_from_json(const nlohmann::json& j) {
  DecisionTree tree;
  try {
    if (j.value("format", "") != "privrec-tree-v1") throw ConfigError("not a privrec-tree-v1 document");
    tree.reference_year = j.at("reference_year").get<int>();
    for (const auto& f : j.at("features")) {
      TreeFeature feature;
      const auto kind = f.at("kind").get<std::string>();
      feature.name = f.at("name").get<std::string>();
      if (kind == "age") {
        feature.kind = FeatureKind::Age;
      } else if (kind == "categorical") {
        feature.kind = FeatureKind::Categorical;
        const auto a = parse_attribute(f.at("attribute").get<std::string>());
        if (!a || *a == Attribute::Interests) throw ConfigError("bad categorical attribute in tree");
        feature.attribute = *a;
      } else if (kind == "interest") {
        feature.kind = FeatureKind::Interest;
        feature.attribute = Attribute::Interests;
        feature.interest_id = f.at("interest_id").get<std::string>();
      } else {
        throw ConfigError("unknown feature kind '" + kind + "'");
      }
      tree.features.push_back(std::move(feature));
    }
    for (const auto& n : j.at("nodes")) {
      TreeNode node;
      node.class_counts = n.at("class_counts").get<std::array<std::size_t, 3>>();
      if (n.at("type").get<std::string>() == "split") {
        node.feature = n.at("feature").get<std::size_t>();
        if (*node.feature >= tree.features.size()) throw ConfigError("split feature index out of range");
        if (n.contains("threshold")) node.threshold = n.at("threshold").get<double>();
        for (const auto& b : n.at("branches")) {
          node.branches.emplace_back(b.at("value").get<std::string>(), b.at("child").get<std::size_t>());
        }
        if (n.contains("missing_child")) node.missing_child = n.at("missing_child").get<std::size_t>();
        const bool age = tree.features[*node.feature].kind == FeatureKind::Age;
        if ((age && node.branches.size() != 2) || node.branches.size() + (node.missing_child ? 1 : 0) < 2) {
          throw ConfigError("split node needs at least two children");
        }
      }
      tree.nodes.push_back(std::move(node));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("tree document: ") + e.what());
  }
  // Children always follow their parent in pre-order.
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    auto check = [&](std::size_t child) {
      if (child <= i || child >= tree.nodes.size()) throw ConfigError("tree child index out of range");
    };
    for (const auto& b : tree.nodes[i].branches) check(b.second);
    if (tree.nodes[i].missing_child) check(*tree.nodes[i].missing_child);
  }
  if (tree.nodes.empty()) throw ConfigError("tree document has no nodes");
  return tree;
}

}  // namespace privrec
