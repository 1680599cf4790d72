#pragma once

// Shared fixtures and hand-rolled generators for the test binaries.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "privrec/cli.hpp"
#include "privrec/privrec.hpp"

namespace testsupport {

inline std::filesystem::path data_dir() { return PRIVREC_DATA_DIR; }

inline privrec::Dataset load_fixture(const std::string& name) {
  const auto dir = data_dir() / name;
  return privrec::parse_profiles(dir / "profiles.csv", dir / "interests.csv", dir / "albums.csv",
                                 privrec::NormalizationDictionary::defaults());
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Random user over small value pools so that equal values and ties are common.
inline privrec::UserVector random_user(privrec::Rng& rng, const std::string& id, double p_missing = 0.4) {
  using namespace privrec;
  static const std::vector<std::string> kEdu{"HighSchool", "College", "Graduate"};
  static const std::vector<std::string> kPlaces{"Canada", "Brazil", "Chile"};
  static const std::vector<std::string> kSmall{"A", "B"};
  auto maybe = [&](const std::vector<std::string>& pool) -> std::optional<std::string> {
    if (rng.bernoulli(p_missing)) return std::nullopt;
    return pool[rng.below(pool.size())];
  };
  UserProfile p;
  p.user_id = id;
  p.birth_year = static_cast<int>(rng.between(1975, 1995));
  if (!rng.bernoulli(p_missing)) p.gender = rng.bernoulli(0.5) ? Gender::Female : Gender::Male;
  if (!rng.bernoulli(p_missing)) p.birthday = Date{1, 1, p.birth_year};
  p.education_level = maybe(kEdu);
  p.degree = maybe(kSmall);
  p.hometown = maybe(kPlaces);
  p.location = maybe(kPlaces);
  p.political = maybe(kSmall);
  if (!rng.bernoulli(p_missing)) p.relationship = static_cast<Relationship>(rng.below(3));
  p.religion = maybe(kSmall);
  std::vector<InterestItem> interests;
  if (!rng.bernoulli(p_missing)) {
    const auto n = rng.between(1, 4);
    for (long long i = 0; i < n; ++i) {
      interests.push_back({"topic-" + std::to_string(rng.below(6)), "TV show", std::nullopt});
    }
  }
  std::vector<PhotoAlbum> albums;
  const auto n_albums = rng.between(0, 5);
  for (long long i = 0; i < n_albums; ++i) {
    albums.emplace_back("album " + std::to_string(i), kAllAlbumPrivacy[rng.below(5)]);
  }
  return build_vector(std::move(p), std::move(interests), std::move(albums));
}

inline privrec::Dataset random_dataset(privrec::Rng& rng, std::size_t n, double p_missing = 0.4) {
  std::vector<privrec::UserVector> users;
  for (std::size_t i = 0; i < n; ++i) users.push_back(random_user(rng, "r" + std::to_string(i), p_missing));
  return privrec::make_dataset(std::move(users));
}

inline privrec::UserVector simple_user(const std::string& id, int birth_year) {
  privrec::UserProfile p;
  p.user_id = id;
  p.birth_year = birth_year;
  return privrec::build_vector(std::move(p), {}, {});
}

}  // namespace testsupport
