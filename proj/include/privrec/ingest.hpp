#pragma once

// Dataset ingestion: CSV and combined-JSON readers, value normalization,
// writers, and descriptive statistics (missing-value rates, top interests).

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "privrec/csv.hpp"
#include "privrec/error.hpp"
#include "privrec/profile.hpp"
#include "privrec/ratio.hpp"
#include "privrec/text.hpp"

namespace privrec {

struct DatasetMetadata {
  int reference_year = kDefaultReferenceYear;
  std::string source;
};

struct Dataset {
  std::vector<UserVector> users;
  DatasetMetadata metadata;

  const UserVector* find(std::string_view user_id) const {
    for (const auto& u : users) {
      if (u.user_id() == user_id) return &u;
    }
    return nullptr;
  }

  const UserVector& at(std::string_view user_id) const {
    if (const auto* u = find(user_id)) return *u;
    throw InvalidInput("unknown user '" + std::string(user_id) + "'");
  }

  int age_of(const UserVector& u) const { return compute_age(u.profile.birth_year, metadata.reference_year); }

  // The source description is informational and not part of identity.
  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.users == b.users && a.metadata.reference_year == b.metadata.reference_year;
  }
};

inline Dataset make_dataset(std::vector<UserVector> users, DatasetMetadata metadata = {}) {
  std::unordered_set<std::string> seen;
  for (const auto& u : users) {
    if (!seen.insert(u.user_id()).second) throw IngestError("duplicate user_id '" + u.user_id() + "'");
  }
  return Dataset{std::move(users), std::move(metadata)};
}

class NormalizationDictionary {
 public:
  NormalizationDictionary() = default;
  NormalizationDictionary(std::map<std::string, std::string> synonyms, std::vector<std::string> education_order)
      : synonyms_(std::move(synonyms)), education_order_(std::move(education_order)) {
    validate();
  }

  static NormalizationDictionary defaults() {
    return NormalizationDictionary(
        {
            {"Cristão-Católico", "Christian-Catholic"},
            {"Cristã-Católica", "Christian-Catholic"},
            {"Católico", "Christian-Catholic"},
            {"Católica", "Christian-Catholic"},
            {"Catholic", "Christian-Catholic"},
            {"Evangélico", "Christian-Evangelical"},
            {"Ateu", "Atheist"},
            {"Liberal (Brasil)", "Liberal"},
            {"Solteiro", "Single"},
            {"Solteira", "Single"},
            {"Casado", "Married"},
            {"Casada", "Married"},
            {"Namorando", "In a relationship"},
            {"Noivo", "Engaged"},
            {"Noiva", "Engaged"},
            {"Feminino", "Female"},
            {"Masculino", "Male"},
            {"High School", "HighSchool"},
            {"Ensino Médio", "HighSchool"},
            {"Faculdade", "College"},
            {"Graduação", "Undergraduate"},
            {"Grad", "Graduate"},
            {"Graduate School", "Graduate"},
            {"Pós-Graduação", "Graduate"},
        },
        {"HighSchool", "College", "Undergraduate", "Graduate"});
  }

  static NormalizationDictionary from_json(const nlohmann::json& j) {
    std::map<std::string, std::string> synonyms;
    std::vector<std::string> order;
    try {
      if (j.contains("synonyms")) {
        for (const auto& [k, v] : j.at("synonyms").items()) synonyms.emplace(k, v.get<std::string>());
      }
      if (j.contains("education_order")) order = j.at("education_order").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("normalization dictionary: ") + e.what());
    }
    if (order.empty()) order = defaults().education_order_;
    return NormalizationDictionary(std::move(synonyms), std::move(order));
  }

  static NormalizationDictionary load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open dictionary '" + path.string() + "'");
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("dictionary '" + path.string() + "': " + e.what());
    }
  }

  // A canonical token must map to itself if it is also a key, so applying
  // the map twice never differs from applying it once.
  void validate() const {
    for (const auto& [raw, canonical] : synonyms_) {
      auto it = synonyms_.find(canonical);
      if (it != synonyms_.end() && it->second != canonical) {
        throw ConfigError("synonym chain: '" + raw + "' -> '" + canonical + "' -> '" + it->second + "'");
      }
    }
    std::set<std::string> seen;
    for (const auto& level : education_order_) {
      if (!seen.insert(text::fold_key(level)).second) {
        throw ConfigError("duplicate education level '" + level + "'");
      }
    }
  }

  // Exact lookup first, then case-insensitive; unmapped tokens pass through.
  std::string canonical(std::string_view token) const {
    const auto trimmed = std::string(text::trim(token));
    if (auto it = synonyms_.find(trimmed); it != synonyms_.end()) return it->second;
    const auto key = text::lower(trimmed);
    for (const auto& [raw, canonical] : synonyms_) {
      if (text::lower(raw) == key) return canonical;
    }
    return trimmed;
  }

  std::optional<std::size_t> education_rank(std::string_view level) const {
    const auto key = text::fold_key(level);
    for (std::size_t i = 0; i < education_order_.size(); ++i) {
      if (text::fold_key(education_order_[i]) == key) return i;
    }
    return std::nullopt;
  }

  const std::map<std::string, std::string>& synonyms() const { return synonyms_; }
  const std::vector<std::string>& education_order() const { return education_order_; }

 private:
  std::map<std::string, std::string> synonyms_;
  std::vector<std::string> education_order_{"HighSchool", "College", "Undergraduate", "Graduate"};
};

// One profile row as it appears in the input, before normalization.
struct RawProfile {
  std::string user_id;
  std::string name;
  std::string gender;
  std::string birth_year;
  std::string birthday;
  std::string education;
  std::string degree;
  std::string hometown;
  std::string location;
  std::string political;
  std::string relationship;
  std::string religion;
};

inline const std::vector<std::string>& profile_columns() {
  static const std::vector<std::string> kColumns{"user_id",  "name",     "gender",    "birth_year",
                                                 "birthday", "education", "degree",   "hometown",
                                                 "location", "political", "relationship", "religion"};
  return kColumns;
}

// Picks the highest ranked level among ';', ',' or '|' separated entries.
// With no ranked entry, the first entry is kept verbatim (after synonyms).
inline std::optional<std::string> normalize_education(std::string_view raw, const NormalizationDictionary& dict) {
  std::optional<std::string> first;
  std::optional<std::size_t> best_rank;
  for (auto part : text::split(raw, ";,|")) {
    if (text::trim(part).empty()) continue;
    const auto token = dict.canonical(part);
    if (!first) first = token;
    if (auto rank = dict.education_rank(token); rank && (!best_rank || *rank > *best_rank)) best_rank = rank;
  }
  if (best_rank) return dict.education_order()[*best_rank];
  return first;
}

// Blank fields become Absent; categorical text goes through the synonym map.
// Structurally invalid values (birth year, gender, date, relationship) throw.
inline UserProfile normalize_record(const RawProfile& raw, const NormalizationDictionary& dict) {
  UserProfile p;
  p.user_id = std::string(text::trim(raw.user_id));
  if (p.user_id.empty()) throw IngestError("empty user_id");

  p.name = text::non_empty(raw.name);

  const auto year = text::parse_int<int>(raw.birth_year);
  if (!year) throw IngestError("user '" + p.user_id + "': birth_year '" + raw.birth_year + "' is not an integer");
  p.birth_year = *year;

  if (auto g = text::non_empty(raw.gender)) {
    p.gender = parse_gender(dict.canonical(*g));
    if (!p.gender) throw IngestError("user '" + p.user_id + "': unknown gender '" + *g + "'");
  }
  if (auto b = text::non_empty(raw.birthday)) {
    p.birthday = parse_date(*b);
    if (!p.birthday) throw IngestError("user '" + p.user_id + "': birthday '" + *b + "' is not MM/DD/YYYY");
    if (p.birthday->year != p.birth_year) {
      throw IngestError("user '" + p.user_id + "': birthday year disagrees with birth_year");
    }
  }
  p.education_level = normalize_education(raw.education, dict);
  p.degree = text::non_empty(raw.degree);
  p.hometown = text::non_empty(raw.hometown);
  p.location = text::non_empty(raw.location);
  if (auto v = text::non_empty(raw.political)) p.political = dict.canonical(*v);
  if (auto r = text::non_empty(raw.relationship)) {
    p.relationship = parse_relationship(dict.canonical(*r));
    if (!p.relationship) throw IngestError("user '" + p.user_id + "': unknown relationship status '" + *r + "'");
  }
  if (auto v = text::non_empty(raw.religion)) p.religion = dict.canonical(*v);
  return p;
}

inline RawProfile to_raw(const UserProfile& p) {
  RawProfile r;
  r.user_id = p.user_id;
  r.name = p.name.value_or("");
  r.gender = p.gender ? std::string(to_string(*p.gender)) : "";
  r.birth_year = std::to_string(p.birth_year);
  r.birthday = p.birthday ? to_string(*p.birthday) : "";
  r.education = p.education_level.value_or("");
  r.degree = p.degree.value_or("");
  r.hometown = p.hometown.value_or("");
  r.location = p.location.value_or("");
  r.political = p.political.value_or("");
  r.relationship = p.relationship ? std::string(to_string(*p.relationship)) : "";
  r.religion = p.religion.value_or("");
  return r;
}

namespace detail {

// Column lookup by header name; every required column must be present.
class Table {
 public:
  Table(std::vector<csv::Row> rows, std::string source, const std::vector<std::string>& required)
      : source_(std::move(source)) {
    if (rows.empty()) return;  // completely empty file: no records
    header_ = std::move(rows.front().fields);
    for (auto& h : header_) h = std::string(text::trim(h));
    rows.erase(rows.begin());
    rows_ = std::move(rows);
    for (const auto& col : required) {
      if (index(col) == npos) throw IngestError(source_ + ": missing column '" + col + "'");
    }
    for (const auto& row : rows_) {
      if (row.fields.size() != header_.size()) {
        throw IngestError(where(row) + ": expected " + std::to_string(header_.size()) + " fields, found " +
                          std::to_string(row.fields.size()));
      }
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t index(std::string_view col) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (header_[i] == col) return i;
    }
    return npos;
  }

  std::string get(const csv::Row& row, std::string_view col) const {
    const auto i = index(col);
    return i == npos ? std::string() : row.fields[i];
  }

  std::string where(const csv::Row& row) const { return source_ + ":" + std::to_string(row.line); }

  const std::vector<csv::Row>& rows() const { return rows_; }

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<csv::Row> rows_;
};

struct InterestRow {
  std::string user_id;
  InterestItem item;
  std::string where;
};

struct AlbumRow {
  std::string user_id;
  std::string name;
  std::string privacy;
  std::string where;
};

inline Dataset assemble(std::vector<std::pair<RawProfile, std::string>> profiles, std::vector<InterestRow> interests,
                        std::vector<AlbumRow> albums, const NormalizationDictionary& dict, DatasetMetadata meta) {
  std::vector<UserProfile> normalized;
  std::unordered_map<std::string, std::size_t> index;
  for (auto& [raw, where] : profiles) {
    UserProfile p;
    try {
      p = normalize_record(raw, dict);
    } catch (const Error& e) {
      throw IngestError(where + ": " + e.what());
    }
    if (!index.emplace(p.user_id, normalized.size()).second) {
      throw IngestError(where + ": duplicate user_id '" + p.user_id + "'");
    }
    normalized.push_back(std::move(p));
  }

  std::vector<std::vector<InterestItem>> user_interests(normalized.size());
  std::vector<std::vector<PhotoAlbum>> user_albums(normalized.size());
  std::vector<std::string> unknown;
  for (auto& r : interests) {
    auto it = index.find(r.user_id);
    if (it == index.end()) {
      unknown.push_back(r.where + ": unknown user_id '" + r.user_id + "'");
      continue;
    }
    user_interests[it->second].push_back(std::move(r.item));
  }
  for (auto& r : albums) {
    auto it = index.find(r.user_id);
    if (it == index.end()) {
      unknown.push_back(r.where + ": unknown user_id '" + r.user_id + "'");
      continue;
    }
    try {
      user_albums[it->second].emplace_back(r.name, parse_album_privacy(r.privacy));
    } catch (const Error& e) {
      throw IngestError(r.where + ": " + e.what());
    }
  }
  if (!unknown.empty()) {
    std::string msg = "rows reference unknown users:";
    for (const auto& u : unknown) msg += "\n  " + u;
    throw IngestError(msg);
  }

  std::vector<UserVector> users;
  users.reserve(normalized.size());
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    users.push_back(build_vector(std::move(normalized[i]), std::move(user_interests[i]), std::move(user_albums[i])));
  }
  return make_dataset(std::move(users), std::move(meta));
}

inline std::string json_field(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return {};
  const auto& v = obj.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw IngestError(std::string("field '") + key + "' must be a string");
}

inline std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace detail

inline Dataset parse_dataset(std::istream& profiles, std::istream& interests, std::istream& albums,
                             const NormalizationDictionary& dict, DatasetMetadata meta = {},
                             std::string_view profiles_name = "profiles", std::string_view interests_name = "interests",
                             std::string_view albums_name = "albums") {
  detail::Table ptab(csv::read(profiles, profiles_name), std::string(profiles_name), profile_columns());
  std::vector<std::pair<RawProfile, std::string>> raw_profiles;
  for (const auto& row : ptab.rows()) {
    RawProfile r;
    r.user_id = ptab.get(row, "user_id");
    r.name = ptab.get(row, "name");
    r.gender = ptab.get(row, "gender");
    r.birth_year = ptab.get(row, "birth_year");
    r.birthday = ptab.get(row, "birthday");
    r.education = ptab.get(row, "education");
    r.degree = ptab.get(row, "degree");
    r.hometown = ptab.get(row, "hometown");
    r.location = ptab.get(row, "location");
    r.political = ptab.get(row, "political");
    r.relationship = ptab.get(row, "relationship");
    r.religion = ptab.get(row, "religion");
    raw_profiles.emplace_back(std::move(r), ptab.where(row));
  }

  detail::Table itab(csv::read(interests, interests_name), std::string(interests_name),
                     {"user_id", "interest_id", "category"});
  std::vector<detail::InterestRow> interest_rows;
  for (const auto& row : itab.rows()) {
    detail::InterestRow r;
    r.where = itab.where(row);
    r.user_id = std::string(text::trim(itab.get(row, "user_id")));
    r.item.interest_id = std::string(text::trim(itab.get(row, "interest_id")));
    r.item.category = std::string(text::trim(itab.get(row, "category")));
    r.item.display_name = text::non_empty(itab.get(row, "display_name"));
    if (r.item.interest_id.empty()) throw IngestError(r.where + ": empty interest_id");
    interest_rows.push_back(std::move(r));
  }

  detail::Table atab(csv::read(albums, albums_name), std::string(albums_name), {"user_id", "album_name", "privacy"});
  std::vector<detail::AlbumRow> album_rows;
  for (const auto& row : atab.rows()) {
    album_rows.push_back({std::string(text::trim(atab.get(row, "user_id"))), atab.get(row, "album_name"),
                          std::string(text::trim(atab.get(row, "privacy"))), atab.where(row)});
  }

  if (meta.source.empty()) meta.source = std::string(profiles_name);
  return detail::assemble(std::move(raw_profiles), std::move(interest_rows), std::move(album_rows), dict,
                          std::move(meta));
}

inline Dataset parse_profiles(const std::filesystem::path& profiles_file, const std::filesystem::path& interests_file,
                              const std::filesystem::path& albums_file, const NormalizationDictionary& dict,
                              DatasetMetadata meta = {}) {
  auto p = detail::open(profiles_file);
  auto i = detail::open(interests_file);
  auto a = detail::open(albums_file);
  return parse_dataset(p, i, a, dict, std::move(meta), profiles_file.string(), interests_file.string(),
                       albums_file.string());
}

// Combined document: {"reference_year"?, "users": [...], "interests": [...], "albums": [...]}.
inline Dataset parse_dataset_json(const nlohmann::json& doc, const NormalizationDictionary& dict,
                                  std::string source = "dataset.json") {
  DatasetMetadata meta;
  meta.source = std::move(source);
  if (doc.contains("reference_year")) meta.reference_year = doc.at("reference_year").get<int>();
  std::vector<std::pair<RawProfile, std::string>> profiles;
  std::vector<detail::InterestRow> interests;
  std::vector<detail::AlbumRow> albums;
  auto array = [&](const char* key) -> const nlohmann::json& {
    static const nlohmann::json kEmpty = nlohmann::json::array();
    if (!doc.contains(key)) return kEmpty;
    if (!doc.at(key).is_array()) throw IngestError(std::string("'") + key + "' must be an array");
    return doc.at(key);
  };
  std::size_t n = 0;
  for (const auto& u : array("users")) {
    RawProfile r;
    r.user_id = detail::json_field(u, "user_id");
    r.name = detail::json_field(u, "name");
    r.gender = detail::json_field(u, "gender");
    r.birth_year = detail::json_field(u, "birth_year");
    r.birthday = detail::json_field(u, "birthday");
    r.education = detail::json_field(u, "education");
    r.degree = detail::json_field(u, "degree");
    r.hometown = detail::json_field(u, "hometown");
    r.location = detail::json_field(u, "location");
    r.political = detail::json_field(u, "political");
    r.relationship = detail::json_field(u, "relationship");
    r.religion = detail::json_field(u, "religion");
    profiles.emplace_back(std::move(r), meta.source + ": users[" + std::to_string(n++) + "]");
  }
  n = 0;
  for (const auto& i : array("interests")) {
    detail::InterestRow r;
    r.where = meta.source + ": interests[" + std::to_string(n++) + "]";
    r.user_id = detail::json_field(i, "user_id");
    r.item.interest_id = detail::json_field(i, "interest_id");
    r.item.category = detail::json_field(i, "category");
    r.item.display_name = text::non_empty(detail::json_field(i, "display_name"));
    if (r.item.interest_id.empty()) throw IngestError(r.where + ": empty interest_id");
    interests.push_back(std::move(r));
  }
  n = 0;
  for (const auto& a : array("albums")) {
    albums.push_back({detail::json_field(a, "user_id"), detail::json_field(a, "album_name"),
                      detail::json_field(a, "privacy"), meta.source + ": albums[" + std::to_string(n++) + "]"});
  }
  return detail::assemble(std::move(profiles), std::move(interests), std::move(albums), dict, std::move(meta));
}

inline Dataset load_dataset_json(const std::filesystem::path& path, const NormalizationDictionary& dict) {
  auto in = detail::open(path);
  try {
    return parse_dataset_json(nlohmann::json::parse(in), dict, path.string());
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

inline void write_dataset_csv(const Dataset& d, std::ostream& profiles, std::ostream& interests, std::ostream& albums) {
  csv::write_row(profiles, profile_columns());
  csv::write_row(interests, {"user_id", "interest_id", "category", "display_name"});
  csv::write_row(albums, {"user_id", "album_name", "privacy"});
  for (const auto& u : d.users) {
    const auto r = to_raw(u.profile);
    csv::write_row(profiles, {r.user_id, r.name, r.gender, r.birth_year, r.birthday, r.education, r.degree, r.hometown,
                              r.location, r.political, r.relationship, r.religion});
    for (const auto& i : u.interests) {
      csv::write_row(interests, {u.user_id(), i.interest_id, i.category, i.display_name.value_or("")});
    }
    for (const auto& a : u.albums) {
      csv::write_row(albums, {u.user_id(), a.name, std::string(to_string(a.privacy))});
    }
  }
}

inline void write_dataset_csv(const Dataset& d, const std::filesystem::path& profiles_file,
                              const std::filesystem::path& interests_file, const std::filesystem::path& albums_file) {
  std::ofstream p(profiles_file, std::ios::binary);
  std::ofstream i(interests_file, std::ios::binary);
  std::ofstream a(albums_file, std::ios::binary);
  if (!p || !i || !a) throw IngestError("cannot write dataset files");
  write_dataset_csv(d, p, i, a);
}

inline nlohmann::json dataset_to_json(const Dataset& d) {
  nlohmann::json users = nlohmann::json::array();
  nlohmann::json interests = nlohmann::json::array();
  nlohmann::json albums = nlohmann::json::array();
  for (const auto& u : d.users) {
    const auto r = to_raw(u.profile);
    users.push_back({{"user_id", r.user_id},     {"name", r.name},         {"gender", r.gender},
                     {"birth_year", u.profile.birth_year}, {"birthday", r.birthday}, {"education", r.education},
                     {"degree", r.degree},       {"hometown", r.hometown}, {"location", r.location},
                     {"political", r.political}, {"relationship", r.relationship}, {"religion", r.religion}});
    for (const auto& i : u.interests) {
      interests.push_back({{"user_id", u.user_id()},
                           {"interest_id", i.interest_id},
                           {"category", i.category},
                           {"display_name", i.display_name.value_or("")}});
    }
    for (const auto& a : u.albums) {
      albums.push_back({{"user_id", u.user_id()}, {"album_name", a.name}, {"privacy", to_string(a.privacy)}});
    }
  }
  return {{"reference_year", d.metadata.reference_year}, {"users", users}, {"interests", interests}, {"albums", albums}};
}

// Share of users with each attribute Absent. Age is tracked separately and is
// always zero because birth_year is mandatory.
struct MissingStats {
  std::size_t user_count = 0;
  std::array<std::size_t, kAttributeCount> absent{};

  Ratio fraction(Attribute a) const {
    return Ratio(static_cast<std::int64_t>(absent[index_of(a)]), static_cast<std::int64_t>(user_count));
  }
  Ratio percentage(Attribute a) const {
    return Ratio(static_cast<std::int64_t>(100 * absent[index_of(a)]), static_cast<std::int64_t>(user_count));
  }
  // Rounded half-up for display.
  int display_percent(Attribute a) const {
    return static_cast<int>((200 * absent[index_of(a)] + user_count) / (2 * user_count));
  }
};

inline MissingStats missing_value_stats(const Dataset& d) {
  if (d.users.empty()) throw InvalidInput("missing-value statistics need a non-empty dataset");
  MissingStats s;
  s.user_count = d.users.size();
  for (const auto& u : d.users) {
    const auto dv = disclosure_vector(u);
    for (auto a : kAllAttributes) {
      if (!dv[a]) ++s.absent[index_of(a)];
    }
  }
  return s;
}

struct RankedInterest {
  std::string interest_id;
  std::string display_name;
  std::string category;
  std::size_t user_count = 0;
};

using InterestRanking = std::vector<RankedInterest>;

inline InterestRanking top_interests(const Dataset& d, std::size_t n) {
  if (n == 0) throw InvalidInput("top_interests: n must be positive");
  std::map<std::string, RankedInterest> by_id;
  for (const auto& u : d.users) {
    for (const auto& i : u.interests) {  // unique per user, so this counts distinct users
      auto [it, inserted] = by_id.try_emplace(i.interest_id);
      if (inserted) it->second = RankedInterest{i.interest_id, i.label(), i.category, 0};
      ++it->second.user_count;
    }
  }
  InterestRanking ranking;
  for (auto& [id, r] : by_id) ranking.push_back(std::move(r));
  std::sort(ranking.begin(), ranking.end(), [](const auto& a, const auto& b) {
    if (a.user_count != b.user_count) return a.user_count > b.user_count;
    if (a.display_name != b.display_name) return a.display_name < b.display_name;
    return a.interest_id < b.interest_id;
  });
  if (ranking.size() > n) ranking.resize(n);
  return ranking;
}

inline std::string render_stats(const MissingStats& s, const InterestRanking& ranking) {
  std::ostringstream os;
  os << "Values users did not share (n=" << s.user_count << ")\n";
  for (auto a : kAllAttributes) {
    os << "  " << std::left << std::setw(14) << to_string(a) << std::right << std::setw(4) << s.display_percent(a)
       << "%  (" << s.absent[index_of(a)] << "/" << s.user_count << ")\n";
  }
  os << "  " << std::left << std::setw(14) << "age" << std::right << std::setw(4) << 0 << "%  (0/" << s.user_count
     << ")\n";
  os << "\nTop " << ranking.size() << " interests\n";
  for (const auto& r : ranking) {
    os << "  " << std::setw(4) << r.user_count << "  " << r.display_name << " [" << r.category << "]\n";
  }
  return os.str();
}

inline nlohmann::json stats_to_json(const MissingStats& s, const InterestRanking& ranking) {
  nlohmann::json missing = nlohmann::json::object();
  for (auto a : kAllAttributes) {
    const auto pct = s.percentage(a);
    missing[std::string(to_string(a))] = {{"absent", s.absent[index_of(a)]},
                                          {"percent", s.display_percent(a)},
                                          {"percent_exact", {pct.num(), pct.den()}}};
  }
  missing["age"] = {{"absent", 0}, {"percent", 0}, {"percent_exact", {0, 1}}};
  nlohmann::json top = nlohmann::json::array();
  for (const auto& r : ranking) {
    top.push_back({{"interest_id", r.interest_id},
                   {"display_name", r.display_name},
                   {"category", r.category},
                   {"user_count", r.user_count}});
  }
  return {{"user_count", s.user_count}, {"missing", missing}, {"top_interests", top}};
}

}  // namespace privrec
