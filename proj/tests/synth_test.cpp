#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace privrec;

TEST(Synth, BundledMarginalsMatchDefaults) {
  const auto cfg = load_synth_config(testsupport::data_dir() / "default-marginals.json");
  EXPECT_EQ(cfg, SynthConfig{});
  EXPECT_DOUBLE_EQ(cfg.missing_rate(Attribute::Degree), 0.94);
  EXPECT_DOUBLE_EQ(cfg.missing_rate(Attribute::Gender), 0.04);
  EXPECT_EQ(cfg.interest_catalog.front().display_name, "The Big Bang Theory");
}

TEST(Synth, ConfigJsonRoundTrip) {
  SynthConfig cfg;
  cfg.n_users = 33;
  cfg.seed = 9;
  cfg.planted = PlantedSignal{Attribute::Location, {Attribute::Gender, Attribute::Religion}, SignalFunction::TruthTable,
                              {true, false, false, true}};
  EXPECT_EQ(synth_config_from_json(synth_config_to_json(cfg)), cfg);
  EXPECT_EQ(synth_config_from_json(nlohmann::json::object()), SynthConfig{});
}

TEST(Synth, ConfigValidation) {
  auto bad = [](nlohmann::json j) { EXPECT_THROW(synth_config_from_json(j), ConfigError) << j.dump(); };
  bad({{"missing", {{"gender", 1.5}}}});
  bad({{"missing", {{"shoe_size", 0.1}}}});
  bad({{"album_privacy", {{"EVERYONE", 0.5}, {"FRIENDS", 0.4}}}});
  bad({{"album_privacy", {{"PUBLIC", 1.0}}}});
  bad({{"n_users", 0}});
  bad({{"birth_year_min", 2000}, {"birth_year_max", 1990}});
  bad({{"planted_signal", {{"target", "education"}, {"inputs", {"education"}}}}});
  bad({{"planted_signal", {{"target", "education"}, {"inputs", {"gender"}}, {"function", "xor3"}}}});
  bad({{"planted_signal", {{"target", "education"}, {"inputs", {"gender"}}, {"truth_table", {1, 0, 1}}}}});
  // 0.1 + 0.2 style sums are accepted exactly
  EXPECT_NO_THROW(synth_config_from_json(
      {{"album_privacy",
        {{"EVERYONE", 0.1}, {"FRIENDS", 0.2}, {"FRIENDS_OF_FRIENDS", 0.3}, {"NETWORKS_FRIENDS", 0.3}, {"CUSTOM", 0.1}}}}));
}

TEST(Synth, DeterministicAndPrefixStable) {
  SynthConfig cfg;
  cfg.n_users = 40;
  const auto a = generate_population(cfg);
  EXPECT_EQ(generate_population(cfg), a);
  cfg.n_users = 15;
  const auto prefix = generate_population(cfg);
  for (std::size_t i = 0; i < prefix.users.size(); ++i) EXPECT_EQ(prefix.users[i], a.users[i]);
  cfg.seed = 43;
  EXPECT_NE(generate_population(cfg).users, prefix.users);
  EXPECT_EQ(a.users[0].user_id(), "u00001");
  EXPECT_EQ(a.users[39].user_id(), "u00040");
}

TEST(Synth, RecordsAreWellFormed) {
  SynthConfig cfg;
  cfg.n_users = 300;
  const auto d = generate_population(cfg);
  const auto dict = NormalizationDictionary::defaults();
  for (const auto& u : d.users) {
    EXPECT_GE(u.profile.birth_year, cfg.birth_year_min);
    EXPECT_LE(u.profile.birth_year, cfg.birth_year_max);
    if (u.profile.birthday) { EXPECT_EQ(u.profile.birthday->year, u.profile.birth_year); }
    if (u.profile.education_level) { EXPECT_TRUE(dict.education_rank(*u.profile.education_level)); }
    EXPECT_LE(u.albums.size(), cfg.albums_max);
    EXPECT_LE(u.interests.size(), cfg.interests_max);
    std::set<std::string> ids;
    for (const auto& i : u.interests) ids.insert(i.interest_id);
    EXPECT_EQ(ids.size(), u.interests.size());
  }
}

TEST(Synth, PlantedSignalHoldsForEveryUser) {
  for (auto f : {SignalFunction::Majority, SignalFunction::Any, SignalFunction::All, SignalFunction::Parity}) {
    SynthConfig cfg;
    cfg.n_users = 200;
    cfg.planted = PlantedSignal{Attribute::Education,
                                {Attribute::Relationship, Attribute::Hometown, Attribute::Religion}, f, {}};
    for (const auto& u : generate_population(cfg).users) {
      const int on = is_disclosed(u, Attribute::Relationship) + is_disclosed(u, Attribute::Hometown) +
                     is_disclosed(u, Attribute::Religion);
      bool expected = false;
      switch (f) {
        case SignalFunction::Majority: expected = on >= 2; break;
        case SignalFunction::Any: expected = on >= 1; break;
        case SignalFunction::All: expected = on == 3; break;
        case SignalFunction::Parity: expected = on % 2 == 1; break;
        default: break;
      }
      EXPECT_EQ(is_disclosed(u, Attribute::Education), expected) << to_string(f);
    }
  }
}

TEST(Synth, MarginalsRoughlyFollowConfig) {
  SynthConfig cfg;
  cfg.n_users = 3000;
  const auto d = generate_population(cfg);
  const auto s = missing_value_stats(d);
  for (auto a : kAllAttributes) EXPECT_NEAR(s.fraction(a).to_double(), cfg.missing_rate(a), 0.03) << to_string(a);
  std::array<double, 5> counts{};
  double total = 0;
  for (const auto& u : d.users) {
    for (auto p : kAllAlbumPrivacy) counts[static_cast<std::size_t>(p)] += static_cast<double>(u.album_summary.count(p));
    total += static_cast<double>(u.album_summary.total());
  }
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(counts[i] / total, cfg.album_privacy[i], 0.01);
}

TEST(Synth, DictionaryDrivesEducationLevels) {
  NormalizationDictionary dict({}, {"Basic", "Advanced"});
  SynthConfig cfg;
  cfg.n_users = 50;
  for (const auto& u : generate_population(cfg, dict).users) {
    const auto level = u.profile.education_level.value_or("Basic");
    EXPECT_TRUE(level == "Basic" || level == "Advanced") << level;
  }
}
