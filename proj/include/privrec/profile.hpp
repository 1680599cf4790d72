#pragma once

// Domain types shared by every module: profiles, interests, albums, the
// combined user vector and its per-attribute disclosure indicators.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "privrec/error.hpp"
#include "privrec/text.hpp"

namespace privrec {

inline constexpr int kDefaultReferenceYear = 2013;

enum class Gender { Female, Male };

inline std::string_view to_string(Gender g) { return g == Gender::Female ? "Female" : "Male"; }

inline std::optional<Gender> parse_gender(std::string_view s) {
  const auto key = text::lower(text::trim(s));
  if (key == "female") return Gender::Female;
  if (key == "male") return Gender::Male;
  return std::nullopt;
}

enum class Relationship {
  Single,
  InARelationship,
  Engaged,
  Married,
  ItsComplicated,
  InAnOpenRelationship,
  Widowed,
  Separated,
  Divorced,
  InACivilUnion,
  InADomesticPartnership,
};

inline constexpr std::array<std::string_view, 11> kRelationshipNames{
    "Single",   "In a relationship", "Engaged",           "Married",
    "It's complicated", "In an open relationship", "Widowed", "Separated",
    "Divorced", "In a civil union",  "In a domestic partnership",
};

inline std::string_view to_string(Relationship r) { return kRelationshipNames[static_cast<std::size_t>(r)]; }

// Case- and punctuation-insensitive: "its complicated" and "It's Complicated" both match.
inline std::optional<Relationship> parse_relationship(std::string_view s) {
  const auto key = text::fold_key(s);
  for (std::size_t i = 0; i < kRelationshipNames.size(); ++i) {
    if (text::fold_key(kRelationshipNames[i]) == key) return static_cast<Relationship>(i);
  }
  return std::nullopt;
}

struct Date {
  int month = 1;
  int day = 1;
  int year = 1970;

  friend bool operator==(const Date&, const Date&) = default;
};

inline bool is_leap_year(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

inline int days_in_month(int month, int year) {
  static constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return kDays[static_cast<std::size_t>(month - 1)];
}

// MM/DD/YYYY; one-digit month/day accepted on input.
inline std::optional<Date> parse_date(std::string_view s) {
  const auto parts = text::split(text::trim(s), "/");
  if (parts.size() != 3 || parts[2].size() != 4) return std::nullopt;
  const auto m = text::parse_int<int>(parts[0]);
  const auto d = text::parse_int<int>(parts[1]);
  const auto y = text::parse_int<int>(parts[2]);
  if (!m || !d || !y || *m < 1 || *m > 12 || *d < 1) return std::nullopt;
  if (*d > days_in_month(*m, *y)) return std::nullopt;
  return Date{*m, *d, *y};
}

inline std::string to_string(const Date& d) {
  std::ostringstream os;
  os << std::setfill('0') << std::setw(2) << d.month << '/' << std::setw(2) << d.day << '/' << std::setw(4)
     << d.year;
  return os.str();
}

struct UserProfile {
  std::string user_id;
  std::optional<std::string> name;
  std::optional<Gender> gender;
  std::optional<Date> birthday;
  int birth_year = 0;
  std::optional<std::string> education_level;
  std::optional<std::string> degree;
  std::optional<std::string> hometown;
  std::optional<std::string> location;
  std::optional<std::string> political;
  std::optional<Relationship> relationship;
  std::optional<std::string> religion;

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

struct InterestItem {
  std::string interest_id;
  std::string category;
  std::optional<std::string> display_name;

  // Topic label for reports: the display name when known, else the id.
  std::string label() const { return display_name.value_or(interest_id); }

  friend bool operator==(const InterestItem&, const InterestItem&) = default;
};

enum class AlbumPrivacy { Everyone, Friends, FriendsOfFriends, NetworksFriends, Custom };

inline constexpr std::array<AlbumPrivacy, 5> kAllAlbumPrivacy{
    AlbumPrivacy::Everyone, AlbumPrivacy::Friends, AlbumPrivacy::FriendsOfFriends,
    AlbumPrivacy::NetworksFriends, AlbumPrivacy::Custom};

inline std::string_view to_string(AlbumPrivacy p) {
  switch (p) {
    case AlbumPrivacy::Everyone: return "EVERYONE";
    case AlbumPrivacy::Friends: return "FRIENDS";
    case AlbumPrivacy::FriendsOfFriends: return "FRIENDS_OF_FRIENDS";
    case AlbumPrivacy::NetworksFriends: return "NETWORKS_FRIENDS";
    case AlbumPrivacy::Custom: return "CUSTOM";
  }
  return "";
}

// Exact uppercase tokens only; anything else is rejected.
inline AlbumPrivacy parse_album_privacy(std::string_view token) {
  for (auto p : kAllAlbumPrivacy) {
    if (to_string(p) == token) return p;
  }
  throw IngestError("unknown album privacy value '" + std::string(token) +
                    "' (expected EVERYONE, FRIENDS, FRIENDS_OF_FRIENDS, NETWORKS_FRIENDS or CUSTOM)");
}

struct PhotoAlbum {
  std::string name;
  AlbumPrivacy privacy = AlbumPrivacy::Friends;

  PhotoAlbum(std::string album_name, AlbumPrivacy value) : name(std::move(album_name)), privacy(value) {
    if (text::trim(name).empty()) throw InvalidInput("photo album name is empty");
  }

  friend bool operator==(const PhotoAlbum&, const PhotoAlbum&) = default;
};

// Per-visibility album counts. The total is derived, so it always equals the sum.
class AlbumSummary {
 public:
  AlbumSummary() = default;

  static AlbumSummary from_counts(std::size_t everyone, std::size_t fof, std::size_t networks,
                                  std::size_t friends, std::size_t custom) {
    AlbumSummary s;
    s.counts_ = {everyone, friends, fof, networks, custom};
    return s;
  }

  static AlbumSummary from_albums(const std::vector<PhotoAlbum>& albums) {
    AlbumSummary s;
    for (const auto& a : albums) ++s.counts_[static_cast<std::size_t>(a.privacy)];
    return s;
  }

  std::size_t count(AlbumPrivacy p) const { return counts_[static_cast<std::size_t>(p)]; }
  std::size_t total() const { return counts_[0] + counts_[1] + counts_[2] + counts_[3] + counts_[4]; }
  std::size_t n_everyone() const { return count(AlbumPrivacy::Everyone); }
  std::size_t n_fof() const { return count(AlbumPrivacy::FriendsOfFriends); }
  std::size_t n_networks() const { return count(AlbumPrivacy::NetworksFriends); }
  std::size_t n_friends() const { return count(AlbumPrivacy::Friends); }
  std::size_t n_custom() const { return count(AlbumPrivacy::Custom); }

  AlbumSummary scaled(std::size_t k) const {
    AlbumSummary s = *this;
    for (auto& c : s.counts_) c *= k;
    return s;
  }

  friend bool operator==(const AlbumSummary&, const AlbumSummary&) = default;

 private:
  std::array<std::size_t, 5> counts_{};  // indexed by AlbumPrivacy
};

// Profile attributes that carry a disclosure indicator. Age is not listed:
// year of birth is always present.
enum class Attribute : std::size_t {
  Gender,
  Birthday,
  Education,
  Degree,
  Hometown,
  Location,
  Political,
  Relationship,
  Religion,
  Interests,
};

inline constexpr std::size_t kAttributeCount = 10;

inline constexpr std::array<Attribute, kAttributeCount> kAllAttributes{
    Attribute::Gender,    Attribute::Birthday,  Attribute::Education, Attribute::Degree,
    Attribute::Hometown,  Attribute::Location,  Attribute::Political, Attribute::Relationship,
    Attribute::Religion,  Attribute::Interests,
};

inline constexpr std::size_t index_of(Attribute a) { return static_cast<std::size_t>(a); }

inline std::string_view to_string(Attribute a) {
  static constexpr std::array<std::string_view, kAttributeCount> kNames{
      "gender",   "birthday", "education", "degree",   "hometown",
      "location", "political", "relationship", "religion", "interests"};
  return kNames[index_of(a)];
}

inline std::optional<Attribute> parse_attribute(std::string_view s) {
  const auto key = text::lower(text::trim(s));
  for (auto a : kAllAttributes) {
    if (to_string(a) == key) return a;
  }
  if (key == "education_level") return Attribute::Education;
  if (key == "birthday_full") return Attribute::Birthday;
  if (key == "politics") return Attribute::Political;
  return std::nullopt;
}

struct UserVector {
  UserProfile profile;
  std::vector<InterestItem> interests;  // sorted by interest_id, unique
  std::vector<PhotoAlbum> albums;       // file order
  AlbumSummary album_summary;

  const std::string& user_id() const { return profile.user_id; }

  bool has_interest(std::string_view interest_id) const {
    return std::ranges::binary_search(interests, interest_id, {}, &InterestItem::interest_id);
  }

  friend bool operator==(const UserVector&, const UserVector&) = default;
};

inline UserVector build_vector(UserProfile profile, std::vector<InterestItem> interests,
                               std::vector<PhotoAlbum> albums) {
  std::stable_sort(interests.begin(), interests.end(),
                   [](const auto& a, const auto& b) { return a.interest_id < b.interest_id; });
  std::vector<InterestItem> unique;
  unique.reserve(interests.size());
  for (auto& item : interests) {
    if (!unique.empty() && unique.back().interest_id == item.interest_id) {
      auto& kept = unique.back();
      if (kept.category != item.category) {
        throw IngestError("interest '" + item.interest_id + "' of user '" + profile.user_id +
                          "' listed with conflicting categories '" + kept.category + "' and '" +
                          item.category + "'");
      }
      if (!kept.display_name) kept.display_name = std::move(item.display_name);
      continue;
    }
    unique.push_back(std::move(item));
  }
  UserVector v;
  v.album_summary = AlbumSummary::from_albums(albums);
  v.profile = std::move(profile);
  v.interests = std::move(unique);
  v.albums = std::move(albums);
  return v;
}

class DisclosureVector {
 public:
  DisclosureVector() = default;
  explicit DisclosureVector(const std::array<bool, kAttributeCount>& bits) : bits_(bits) {}

  bool disclosed(Attribute a) const { return bits_[index_of(a)]; }
  bool operator[](Attribute a) const { return disclosed(a); }
  const std::array<bool, kAttributeCount>& bits() const { return bits_; }

  friend bool operator==(const DisclosureVector&, const DisclosureVector&) = default;

 private:
  std::array<bool, kAttributeCount> bits_{};
};

inline bool is_disclosed(const UserVector& v, Attribute a) {
  const auto& p = v.profile;
  switch (a) {
    case Attribute::Gender: return p.gender.has_value();
    case Attribute::Birthday: return p.birthday.has_value();
    case Attribute::Education: return p.education_level.has_value();
    case Attribute::Degree: return p.degree.has_value();
    case Attribute::Hometown: return p.hometown.has_value();
    case Attribute::Location: return p.location.has_value();
    case Attribute::Political: return p.political.has_value();
    case Attribute::Relationship: return p.relationship.has_value();
    case Attribute::Religion: return p.religion.has_value();
    case Attribute::Interests: return !v.interests.empty();
  }
  return false;
}

inline DisclosureVector disclosure_vector(const UserVector& v) {
  std::array<bool, kAttributeCount> bits{};
  for (auto a : kAllAttributes) bits[index_of(a)] = is_disclosed(v, a);
  return DisclosureVector(bits);
}

// Textual value of a profile attribute, used for categorical comparisons.
// Interests have no single value and return nullopt.
inline std::optional<std::string> attribute_value(const UserProfile& p, Attribute a) {
  switch (a) {
    case Attribute::Gender:
      return p.gender ? std::optional<std::string>(std::string(to_string(*p.gender))) : std::nullopt;
    case Attribute::Birthday:
      return p.birthday ? std::optional<std::string>(to_string(*p.birthday)) : std::nullopt;
    case Attribute::Education: return p.education_level;
    case Attribute::Degree: return p.degree;
    case Attribute::Hometown: return p.hometown;
    case Attribute::Location: return p.location;
    case Attribute::Political: return p.political;
    case Attribute::Relationship:
      return p.relationship ? std::optional<std::string>(std::string(to_string(*p.relationship)))
                            : std::nullopt;
    case Attribute::Religion: return p.religion;
    case Attribute::Interests: return std::nullopt;
  }
  return std::nullopt;
}

inline int compute_age(int birth_year, int reference_year) {
  if (reference_year < birth_year) {
    throw InvalidInput("reference year " + std::to_string(reference_year) + " precedes birth year " +
                       std::to_string(birth_year));
  }
  return reference_year - birth_year;
}

enum class PrivacyCategory { Fundamentalist, Pragmatic, Unconcerned };

inline constexpr std::array<PrivacyCategory, 3> kAllCategories{
    PrivacyCategory::Fundamentalist, PrivacyCategory::Pragmatic, PrivacyCategory::Unconcerned};

inline std::string_view to_string(PrivacyCategory c) {
  switch (c) {
    case PrivacyCategory::Fundamentalist: return "Fundamentalist";
    case PrivacyCategory::Pragmatic: return "Pragmatic";
    case PrivacyCategory::Unconcerned: return "Unconcerned";
  }
  return "";
}

// "ignorant" is accepted as a synonym of Unconcerned; "pragmatist" of Pragmatic.
inline std::optional<PrivacyCategory> parse_category(std::string_view s) {
  const auto key = text::lower(text::trim(s));
  if (key == "fundamentalist") return PrivacyCategory::Fundamentalist;
  if (key == "pragmatic" || key == "pragmatist") return PrivacyCategory::Pragmatic;
  if (key == "unconcerned" || key == "ignorant") return PrivacyCategory::Unconcerned;
  return std::nullopt;
}

}  // namespace privrec
