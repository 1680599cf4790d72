#include <gtest/gtest.h>

#include "support.hpp"

using namespace privrec;

namespace {

Dataset parse_strings(const std::string& profiles, const std::string& interests, const std::string& albums) {
  std::istringstream p(profiles), i(interests), a(albums);
  return parse_dataset(p, i, a, NormalizationDictionary::defaults());
}

const std::string kHeader = "user_id,name,gender,birth_year,birthday,education,degree,hometown,location,political,"
                            "relationship,religion\n";
const std::string kInterestsHeader = "user_id,interest_id,category,display_name\n";
const std::string kAlbumsHeader = "user_id,album_name,privacy\n";

}  // namespace

TEST(Csv, QuotesCrlfAndBom) {
  std::istringstream in("\xEF\xBB\xBF" "a,b\r\n\"x, y\",\"he said \"\"hi\"\"\"\r\n\r\n\"multi\nline\",z\n");
  const auto rows = csv::read(in, "t");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].fields[0], "a");
  EXPECT_EQ(rows[1].fields[0], "x, y");
  EXPECT_EQ(rows[1].fields[1], "he said \"hi\"");
  EXPECT_EQ(rows[2].fields[0], "multi\nline");
  std::istringstream bad("a,\"b\n");
  EXPECT_THROW(csv::read(bad, "t"), IngestError);
  std::ostringstream out;
  csv::write_row(out, {"plain", "with,comma", "q\"uote"});
  EXPECT_EQ(out.str(), "plain,\"with,comma\",\"q\"\"uote\"\n");
}

TEST(Dictionary, DefaultsCanonicalize) {
  const auto d = NormalizationDictionary::defaults();
  EXPECT_NO_THROW(d.validate());
  EXPECT_EQ(d.canonical("Cristão-Católico"), "Christian-Catholic");
  EXPECT_EQ(d.canonical("grad"), "Graduate");
  EXPECT_EQ(d.canonical("Unmapped"), "Unmapped");
  EXPECT_LT(*d.education_rank("HighSchool"), *d.education_rank("Graduate"));
}

TEST(Dictionary, BundledFileMatchesDefaults) {
  const auto d = NormalizationDictionary::load(testsupport::data_dir() / "dictionary.json");
  const auto def = NormalizationDictionary::defaults();
  EXPECT_EQ(d.education_order(), def.education_order());
  for (const auto& token : {"Cristão-Católico", "Grad", "High School", "Feminino", "Solteira"}) {
    EXPECT_EQ(d.canonical(token), def.canonical(token)) << token;
  }
}

TEST(Dictionary, RejectsChainsAndDuplicateLevels) {
  EXPECT_THROW(NormalizationDictionary::from_json({{"synonyms", {{"a", "b"}, {"b", "c"}}}}), ConfigError);
  EXPECT_THROW(NormalizationDictionary::from_json({{"education_order", {"X", "X"}}}), ConfigError);
}

TEST(Normalize, EducationKeepsHighestLevel) {
  const auto d = NormalizationDictionary::defaults();
  EXPECT_EQ(normalize_education("High School; Grad", d), "Graduate");
  EXPECT_EQ(normalize_education("College|HighSchool", d), "College");
  EXPECT_EQ(normalize_education("Some Academy", d), "Some Academy");
  EXPECT_FALSE(normalize_education("  ", d));
}

TEST(Normalize, RecordFieldsAndErrors) {
  const auto d = NormalizationDictionary::defaults();
  RawProfile r;
  r.user_id = " u1 ";
  r.birth_year = "1983";
  r.gender = "Feminino";
  r.relationship = "Solteira";
  r.religion = "Cristão-Católico";
  r.birthday = "05/04/1983";
  const auto p = normalize_record(r, d);
  EXPECT_EQ(p.user_id, "u1");
  EXPECT_EQ(p.gender, Gender::Female);
  EXPECT_EQ(p.relationship, Relationship::Single);
  EXPECT_EQ(p.religion, "Christian-Catholic");
  EXPECT_FALSE(p.location);
  auto bad = r;
  bad.birth_year = "nineteen";
  EXPECT_THROW(normalize_record(bad, d), IngestError);
  bad = r;
  bad.birthday = "05/04/1984";
  EXPECT_THROW(normalize_record(bad, d), IngestError);
  bad = r;
  bad.relationship = "Whatever";
  EXPECT_THROW(normalize_record(bad, d), IngestError);
}

TEST(Ingest, Example1Fixture) {
  const auto d = testsupport::load_fixture("example1");
  ASSERT_EQ(d.users.size(), 3u);
  const auto& s = d.at("sandrine");
  EXPECT_EQ(s.profile.education_level, "Graduate");
  EXPECT_EQ(s.album_summary.total(), 20u);
  EXPECT_EQ(s.interests.size(), 3u);
  EXPECT_EQ(d.age_of(s), 30);
  EXPECT_EQ(d.find("nobody"), nullptr);
  EXPECT_THROW(d.at("nobody"), InvalidInput);
}

TEST(Ingest, UnknownUserInInterestsIsReported) {
  try {
    parse_strings(kHeader + "a,,,1990,,,,,,,,\n", kInterestsHeader + "ghost,x,TV show,\n", kAlbumsHeader);
    FAIL() << "expected IngestError";
  } catch (const IngestError& e) {
    EXPECT_NE(std::string(e.what()).find("ghost"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos);
  }
}

TEST(Ingest, StructuralErrors) {
  EXPECT_THROW(parse_strings("user_id,name\nx,y\n", kInterestsHeader, kAlbumsHeader), IngestError);
  EXPECT_THROW(parse_strings(kHeader + "a,,,1990,,,,,,,,\na,,,1991,,,,,,,,\n", kInterestsHeader, kAlbumsHeader),
               IngestError);
  EXPECT_THROW(parse_strings(kHeader + "a,,,1990,,,,,,,,\n", kInterestsHeader, kAlbumsHeader + "a,x,PUBLIC\n"),
               IngestError);
  EXPECT_THROW(parse_strings(kHeader + "a,,,1990,,,,\n", kInterestsHeader, kAlbumsHeader), IngestError);
}

TEST(Ingest, EmptyAuxiliaryFilesAreAllowed) {
  const auto d = parse_strings(kHeader + "a,,,1990,,,,,,,,\n", "", "");
  ASSERT_EQ(d.users.size(), 1u);
  EXPECT_TRUE(d.users[0].interests.empty());
  EXPECT_FALSE(is_disclosed(d.users[0], Attribute::Interests));
}

TEST(Ingest, CsvRoundTripOnRandomData) {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = testsupport::random_dataset(rng, 25);
    std::ostringstream p, i, a;
    write_dataset_csv(d, p, i, a);
    EXPECT_EQ(parse_strings(p.str(), i.str(), a.str()), d);
  }
}

TEST(Ingest, JsonRoundTrip) {
  const auto d = testsupport::load_fixture("example2");
  const auto back = parse_dataset_json(dataset_to_json(d), NormalizationDictionary::defaults());
  EXPECT_EQ(back, d);
}

TEST(Stats, Example1MissingValues) {
  const auto s = missing_value_stats(testsupport::load_fixture("example1"));
  EXPECT_EQ(s.user_count, 3u);
  EXPECT_EQ(s.fraction(Attribute::Relationship), Ratio(1, 3));
  EXPECT_EQ(s.fraction(Attribute::Political), Ratio(1, 3));
  EXPECT_EQ(s.fraction(Attribute::Gender), Ratio(0, 1));
  EXPECT_EQ(s.percentage(Attribute::Political), Ratio(100, 3));
  EXPECT_EQ(s.display_percent(Attribute::Political), 33);
  EXPECT_THROW(missing_value_stats(make_dataset({})), InvalidInput);
}

TEST(Stats, StatsMatchIndependentCount) {
  Rng rng(5);
  const auto d = testsupport::random_dataset(rng, 200);
  const auto s = missing_value_stats(d);
  for (auto a : kAllAttributes) {
    std::size_t absent = 0;
    for (const auto& u : d.users) {
      const auto v = attribute_value(u.profile, a);
      const bool present = a == Attribute::Interests ? !u.interests.empty() : v.has_value();
      absent += present ? 0 : 1;
    }
    EXPECT_EQ(s.absent[index_of(a)], absent) << to_string(a);
  }
}

TEST(Stats, TopInterestsOrdering) {
  const auto d = parse_strings(kHeader + "a,,,1990,,,,,,,,\nb,,,1990,,,,,,,,\n",
                               kInterestsHeader + "a,z,TV show,Zed\na,y,TV show,Why\nb,y,TV show,\na,x,Sport,Ex\n"
                                                  "b,x,Sport,Ex\n",
                               "");
  const auto top = top_interests(d, 2);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].display_name, "Ex");
  EXPECT_EQ(top[0].user_count, 2u);
  EXPECT_EQ(top[1].interest_id, "y");
  EXPECT_THROW(top_interests(d, 0), InvalidInput);
}
