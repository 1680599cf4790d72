#pragma once

// Seeded synthetic populations with configurable per-attribute missingness,
// interest popularity, and album-privacy mix. Each user draws from its own
// stream, so growing the population leaves earlier users unchanged.

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "privrec/error.hpp"
#include "privrec/ingest.hpp"
#include "privrec/profile.hpp"
#include "privrec/random.hpp"

namespace privrec {

struct InterestTopic {
  std::string interest_id;
  std::string display_name;
  std::string category;
  double weight = 1.0;

  friend bool operator==(const InterestTopic&, const InterestTopic&) = default;
};

enum class SignalFunction { Majority, Any, All, Parity, TruthTable };

inline std::string_view to_string(SignalFunction f) {
  switch (f) {
    case SignalFunction::Majority: return "majority";
    case SignalFunction::Any: return "any";
    case SignalFunction::All: return "all";
    case SignalFunction::Parity: return "parity";
    case SignalFunction::TruthTable: return "truth_table";
  }
  return "";
}

// The target attribute is disclosed exactly when `function` holds over the
// disclosure indicators of `inputs`.
struct PlantedSignal {
  Attribute target = Attribute::Education;
  std::vector<Attribute> inputs;
  SignalFunction function = SignalFunction::Majority;
  std::vector<bool> truth_table;  // indexed by sum(bit_j << j) when function is TruthTable

  bool evaluate(const std::vector<bool>& bits) const {
    std::size_t on = 0;
    std::size_t index = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      on += bits[j] ? 1 : 0;
      index |= (bits[j] ? std::size_t{1} : 0) << j;
    }
    switch (function) {
      case SignalFunction::Majority: return 2 * on > bits.size();
      case SignalFunction::Any: return on > 0;
      case SignalFunction::All: return on == bits.size();
      case SignalFunction::Parity: return on % 2 == 1;
      case SignalFunction::TruthTable: return truth_table.at(index);
    }
    return false;
  }

  friend bool operator==(const PlantedSignal&, const PlantedSignal&) = default;
};

// Published non-disclosure rates per attribute. The birthday rate has no
// published counterpart and is an artifact default.
inline constexpr std::array<double, kAttributeCount> kDefaultMissingRates{
    0.04,  // gender
    0.50,  // birthday (full date)
    0.12,  // education
    0.94,  // degree
    0.36,  // hometown
    0.20,  // location
    0.91,  // political
    0.39,  // relationship
    0.67,  // religion
    0.32,  // interests
};

inline std::vector<InterestTopic> default_interest_catalog() {
  std::vector<InterestTopic> c{
      {"tv-the-big-bang-theory", "The Big Bang Theory", "TV show", 10},
      {"tv-game-of-thrones", "Game of Thrones", "TV show", 7},
      {"tv-dexter", "Dexter", "TV show", 6},
      {"band-coldplay", "Coldplay", "Musician band", 5},
      {"tv-friends", "FRIENDS", "TV show", 5},
      {"cafe-suave-sabor", "Suave Sabor", "Restaurant café", 5},
      {"tv-how-i-met-your-mother", "How I Met Your Mother", "TV show", 5},
      {"band-adele", "Adele", "Musician band", 4},
      {"band-bob-marley", "Bob Marley", "Musician band", 4},
      {"band-chico-buarque", "Chico Buarque", "Musician band", 4},
  };
  static constexpr std::array<const char*, 5> kTailCategories{"TV show", "Musician band", "Sport", "Movie", "Book"};
  for (int i = 11; i <= 40; ++i) {
    std::ostringstream id, name;
    id << "tail-" << std::setw(2) << std::setfill('0') << i;
    name << "Long-tail topic " << i;
    c.push_back({id.str(), name.str(), kTailCategories[static_cast<std::size_t>(i) % kTailCategories.size()], 2});
  }
  return c;
}

struct SynthConfig {
  std::size_t n_users = 150;
  std::uint64_t seed = 42;
  int reference_year = kDefaultReferenceYear;
  int birth_year_min = 1975;
  int birth_year_max = 1995;
  std::array<double, kAttributeCount> missing = kDefaultMissingRates;
  std::vector<InterestTopic> interest_catalog = default_interest_catalog();
  std::size_t interests_min = 1;  // per user, when interests are disclosed
  std::size_t interests_max = 6;
  std::size_t albums_min = 0;
  std::size_t albums_max = 30;
  // Indexed by AlbumPrivacy: EVERYONE, FRIENDS, FRIENDS_OF_FRIENDS, NETWORKS_FRIENDS, CUSTOM.
  std::array<double, 5> album_privacy{0.40, 0.25, 0.10, 0.05, 0.20};
  std::optional<PlantedSignal> planted;

  double missing_rate(Attribute a) const { return missing[index_of(a)]; }

  void validate() const {
    if (n_users < 1) throw ConfigError("n_users must be at least 1");
    if (birth_year_min > birth_year_max) throw ConfigError("birth_year_min exceeds birth_year_max");
    if (birth_year_max > reference_year) throw ConfigError("birth years must not exceed the reference year");
    for (auto a : kAllAttributes) {
      const double p = missing_rate(a);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("missing probability for " + std::string(to_string(a)) + " outside [0, 1]");
      }
    }
    if (interests_min > interests_max) throw ConfigError("interests_min exceeds interests_max");
    if (albums_min > albums_max) throw ConfigError("albums_min exceeds albums_max");
    if (interests_min < 1) throw ConfigError("interests_min must be at least 1");
    if (interest_catalog.empty() && missing_rate(Attribute::Interests) < 1.0) {
      throw ConfigError("interest catalog is empty but interests may be disclosed");
    }
    for (const auto& t : interest_catalog) {
      if (!(t.weight > 0.0)) throw ConfigError("interest weight for '" + t.interest_id + "' must be positive");
    }
    // Probabilities are compared as exact decimals with nine fractional digits.
    constexpr double kScale = 1e9;
    std::int64_t units = 0;
    for (double p : album_privacy) {
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("album privacy probability outside [0, 1]");
      const double scaled = p * kScale;
      const auto rounded = std::llround(scaled);
      if (std::abs(scaled - static_cast<double>(rounded)) > 1e-3) {
        throw ConfigError("album privacy probabilities must have at most nine decimal places");
      }
      units += rounded;
    }
    if (units != static_cast<std::int64_t>(kScale)) throw ConfigError("album privacy distribution must sum to 1");
    if (planted) {
      if (planted->inputs.empty() || planted->inputs.size() > 16) {
        throw ConfigError("planted signal needs between 1 and 16 inputs");
      }
      for (std::size_t i = 0; i < planted->inputs.size(); ++i) {
        if (planted->inputs[i] == planted->target) throw ConfigError("planted signal target listed as an input");
        for (std::size_t j = 0; j < i; ++j) {
          if (planted->inputs[i] == planted->inputs[j]) throw ConfigError("duplicate planted signal input");
        }
      }
      if (planted->function == SignalFunction::TruthTable &&
          planted->truth_table.size() != (std::size_t{1} << planted->inputs.size())) {
        throw ConfigError("truth table needs 2^inputs entries");
      }
    }
  }

  friend bool operator==(const SynthConfig&, const SynthConfig&) = default;
};

namespace detail {

inline constexpr std::uint64_t kUserStreamDomain = 0x7573'6572ULL;  // "user"

inline const std::vector<std::string>& synth_degrees() {
  static const std::vector<std::string> v{"Computer Science", "Engineering", "Biology", "Business",
                                          "Psychology",       "Law",         "Medicine", "Mathematics"};
  return v;
}
inline const std::vector<std::string>& synth_places() {
  static const std::vector<std::string> v{"Ottawa, Canada",    "Toronto, Canada",        "Montreal, Canada",
                                          "Halifax, Canada",   "Vancouver, Canada",      "São Paulo, Brazil",
                                          "Rio de Janeiro, Brazil", "Belo Horizonte, Brazil"};
  return v;
}
inline const std::vector<std::string>& synth_political() {
  static const std::vector<std::string> v{"Liberal", "Conservative", "Moderate", "Socialist", "Independent"};
  return v;
}
inline const std::vector<std::string>& synth_religions() {
  static const std::vector<std::string> v{"Christian-Catholic", "Christian-Evangelical", "Atheist", "Agnostic",
                                          "Jewish",             "Muslim",                "Spiritist"};
  return v;
}
inline const std::vector<std::string>& synth_album_names() {
  static const std::vector<std::string> v{"Wall Photos",  "Mobile Uploads", "Profile Pictures", "Cover Photos",
                                          "Summer Trip",  "Family",         "Graduation",       "Friends",
                                          "Party",        "Random"};
  return v;
}
inline constexpr std::array<double, 11> kRelationshipWeights{5, 3, 1, 1.5, 1, 0.3, 0.1, 0.2, 0.3, 0.2, 0.2};

inline const std::string& pick(Rng& rng, const std::vector<std::string>& values) {
  return values[rng.below(values.size())];
}

inline std::string synth_user_id(std::size_t index) {
  std::ostringstream os;
  os << 'u' << std::setw(5) << std::setfill('0') << index + 1;
  return os.str();
}

inline UserVector generate_user(const SynthConfig& cfg, std::size_t index, const NormalizationDictionary& dict) {
  Rng rng(cfg.seed, kUserStreamDomain, index);
  UserProfile p;
  p.user_id = synth_user_id(index);
  p.name = "Synthetic User " + std::to_string(index + 1);
  p.birth_year = static_cast<int>(rng.between(cfg.birth_year_min, cfg.birth_year_max));

  // Presence and a candidate value are drawn for every attribute, in
  // attribute order, so the draw sequence never depends on the outcome.
  std::array<bool, kAttributeCount> present{};
  for (auto a : kAllAttributes) present[index_of(a)] = !rng.bernoulli(cfg.missing_rate(a));
  const auto gender = rng.bernoulli(0.5) ? Gender::Female : Gender::Male;
  const int month = static_cast<int>(rng.between(1, 12));
  const int day = static_cast<int>(rng.between(1, days_in_month(month, p.birth_year)));
  const auto& levels = dict.education_order();
  const auto education = levels[rng.below(levels.size())];
  const auto degree = pick(rng, synth_degrees());
  const auto hometown = pick(rng, synth_places());
  const auto location = rng.bernoulli(0.6) ? hometown : pick(rng, synth_places());
  const auto political = pick(rng, synth_political());
  const auto relationship = static_cast<Relationship>(rng.weighted(kRelationshipWeights));
  const auto religion = pick(rng, synth_religions());

  if (cfg.planted) {
    std::vector<bool> bits;
    for (auto a : cfg.planted->inputs) bits.push_back(present[index_of(a)]);
    present[index_of(cfg.planted->target)] = cfg.planted->evaluate(bits);
  }
  auto on = [&](Attribute a) { return present[index_of(a)]; };
  if (on(Attribute::Gender)) p.gender = gender;
  if (on(Attribute::Birthday)) p.birthday = Date{month, day, p.birth_year};
  if (on(Attribute::Education)) p.education_level = education;
  if (on(Attribute::Degree)) p.degree = degree;
  if (on(Attribute::Hometown)) p.hometown = hometown;
  if (on(Attribute::Location)) p.location = location;
  if (on(Attribute::Political)) p.political = political;
  if (on(Attribute::Relationship)) p.relationship = relationship;
  if (on(Attribute::Religion)) p.religion = religion;

  std::vector<InterestItem> interests;
  if (on(Attribute::Interests)) {
    std::vector<double> weights;
    for (const auto& t : cfg.interest_catalog) weights.push_back(t.weight);
    const auto wanted = std::min<std::size_t>(
        static_cast<std::size_t>(rng.between(static_cast<long long>(cfg.interests_min),
                                             static_cast<long long>(cfg.interests_max))),
        cfg.interest_catalog.size());
    for (std::size_t i = 0; i < wanted; ++i) {
      const auto chosen = rng.weighted(weights);
      weights[chosen] = 0.0;  // without replacement
      const auto& t = cfg.interest_catalog[chosen];
      interests.push_back({t.interest_id, t.category, t.display_name});
    }
  }

  std::vector<PhotoAlbum> albums;
  const auto n_albums = static_cast<std::size_t>(
      rng.between(static_cast<long long>(cfg.albums_min), static_cast<long long>(cfg.albums_max)));
  const auto& names = synth_album_names();
  for (std::size_t j = 0; j < n_albums; ++j) {
    const auto privacy = kAllAlbumPrivacy[rng.weighted(cfg.album_privacy)];
    std::string name = names[j % names.size()];
    if (j >= names.size()) name += " " + std::to_string(j / names.size() + 1);
    albums.emplace_back(std::move(name), privacy);
  }
  return build_vector(std::move(p), std::move(interests), std::move(albums));
}

}  // namespace detail

inline Dataset generate_population(const SynthConfig& cfg,
                                   const NormalizationDictionary& dict = NormalizationDictionary::defaults()) {
  cfg.validate();
  std::vector<UserVector> users;
  users.reserve(cfg.n_users);
  for (std::size_t i = 0; i < cfg.n_users; ++i) users.push_back(detail::generate_user(cfg, i, dict));
  DatasetMetadata meta;
  meta.reference_year = cfg.reference_year;
  meta.source = "synthetic (seed " + std::to_string(cfg.seed) + ", " + kRngVersion + ")";
  return make_dataset(std::move(users), std::move(meta));
}

inline PlantedSignal planted_signal_from_json(const nlohmann::json& j) {
  PlantedSignal s;
  const auto target = parse_attribute(j.at("target").get<std::string>());
  if (!target) throw ConfigError("unknown planted-signal target");
  s.target = *target;
  for (const auto& name : j.at("inputs")) {
    const auto a = parse_attribute(name.get<std::string>());
    if (!a) throw ConfigError("unknown planted-signal input '" + name.get<std::string>() + "'");
    s.inputs.push_back(*a);
  }
  if (j.contains("truth_table")) {
    s.function = SignalFunction::TruthTable;
    for (const auto& b : j.at("truth_table")) s.truth_table.push_back(b.is_boolean() ? b.get<bool>() : b.get<int>() != 0);
  } else {
    const auto f = j.value("function", "majority");
    if (f == "majority") {
      s.function = SignalFunction::Majority;
    } else if (f == "any") {
      s.function = SignalFunction::Any;
    } else if (f == "all") {
      s.function = SignalFunction::All;
    } else if (f == "parity") {
      s.function = SignalFunction::Parity;
    } else {
      throw ConfigError("unknown planted-signal function '" + f + "'");
    }
  }
  return s;
}

// Keys absent from the document keep their defaults.
inline SynthConfig synth_config_from_json(const nlohmann::json& j) {
  SynthConfig cfg;
  try {
    if (j.contains("n_users")) cfg.n_users = j.at("n_users").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("reference_year")) cfg.reference_year = j.at("reference_year").get<int>();
    if (j.contains("birth_year_min")) cfg.birth_year_min = j.at("birth_year_min").get<int>();
    if (j.contains("birth_year_max")) cfg.birth_year_max = j.at("birth_year_max").get<int>();
    if (j.contains("missing")) {
      for (const auto& [name, p] : j.at("missing").items()) {
        if (name == "age") {
          if (p.get<double>() != 0.0) throw ConfigError("age is always present; its missing rate must be 0");
          continue;
        }
        const auto a = parse_attribute(name);
        if (!a) throw ConfigError("unknown attribute '" + name + "' in missing rates");
        cfg.missing[index_of(*a)] = p.get<double>();
      }
    }
    if (j.contains("interest_catalog")) {
      cfg.interest_catalog.clear();
      for (const auto& t : j.at("interest_catalog")) {
        cfg.interest_catalog.push_back({t.at("interest_id").get<std::string>(), t.at("display_name").get<std::string>(),
                                        t.at("category").get<std::string>(), t.at("weight").get<double>()});
      }
    }
    if (j.contains("interests_per_user")) {
      cfg.interests_min = j.at("interests_per_user").at("min").get<std::size_t>();
      cfg.interests_max = j.at("interests_per_user").at("max").get<std::size_t>();
    }
    if (j.contains("albums_per_user")) {
      cfg.albums_min = j.at("albums_per_user").at("min").get<std::size_t>();
      cfg.albums_max = j.at("albums_per_user").at("max").get<std::size_t>();
    }
    if (j.contains("album_privacy")) {
      cfg.album_privacy = {};
      for (const auto& [token, p] : j.at("album_privacy").items()) {
        cfg.album_privacy[static_cast<std::size_t>(parse_album_privacy(token))] = p.get<double>();
      }
    }
    if (j.contains("planted_signal") && !j.at("planted_signal").is_null()) {
      cfg.planted = planted_signal_from_json(j.at("planted_signal"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("synthesis config: ") + e.what());
  } catch (const IngestError& e) {
    throw ConfigError(std::string("synthesis config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

inline SynthConfig load_synth_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open synthesis config '" + path.string() + "'");
  try {
    return synth_config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

inline nlohmann::json synth_config_to_json(const SynthConfig& cfg) {
  nlohmann::json missing = nlohmann::json::object();
  for (auto a : kAllAttributes) missing[std::string(to_string(a))] = cfg.missing_rate(a);
  nlohmann::json catalog = nlohmann::json::array();
  for (const auto& t : cfg.interest_catalog) {
    catalog.push_back(
        {{"interest_id", t.interest_id}, {"display_name", t.display_name}, {"category", t.category}, {"weight", t.weight}});
  }
  nlohmann::json privacy = nlohmann::json::object();
  for (auto p : kAllAlbumPrivacy) privacy[std::string(to_string(p))] = cfg.album_privacy[static_cast<std::size_t>(p)];
  nlohmann::json j{{"n_users", cfg.n_users},
                   {"seed", cfg.seed},
                   {"reference_year", cfg.reference_year},
                   {"birth_year_min", cfg.birth_year_min},
                   {"birth_year_max", cfg.birth_year_max},
                   {"missing", missing},
                   {"interest_catalog", catalog},
                   {"interests_per_user", {{"min", cfg.interests_min}, {"max", cfg.interests_max}}},
                   {"albums_per_user", {{"min", cfg.albums_min}, {"max", cfg.albums_max}}},
                   {"album_privacy", privacy}};
  if (cfg.planted) {
    nlohmann::json inputs = nlohmann::json::array();
    for (auto a : cfg.planted->inputs) inputs.push_back(to_string(a));
    nlohmann::json s{{"target", to_string(cfg.planted->target)}, {"inputs", inputs}};
    if (cfg.planted->function == SignalFunction::TruthTable) {
      s["truth_table"] = cfg.planted->truth_table;
    } else {
      s["function"] = to_string(cfg.planted->function);
    }
    j["planted_signal"] = s;
  }
  return j;
}

}  // namespace privrec
