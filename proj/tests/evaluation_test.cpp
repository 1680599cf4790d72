#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "support.hpp"

using namespace privrec;

TEST(Metrics, HandComputed) {
  const std::vector<Prediction> p{{1.0, true}, {2.0 / 3.0, false}, {0.5, false}, {0.0, true}};
  const auto m = classification_metrics(p);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.5);  // first and third are right; 0.5 predicts hidden
  EXPECT_NEAR(m.mae, (0.0 + 2.0 / 3.0 + 0.5 + 1.0) / 4.0, 1e-15);
  EXPECT_THROW(classification_metrics({}), InvalidInput);
}

TEST(Metrics, Variance) {
  EXPECT_DOUBLE_EQ(sample_variance({1, 2, 3, 4}), 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(sample_variance({7}), 0.0);
  EXPECT_DOUBLE_EQ(mean_of({1, 2, 3, 4}), 2.5);
}

TEST(CrossValidation, EveryInstanceTestedOncePerReplication) {
  Rng rng(3);
  for (std::size_t n : {31u, 40u}) {
    const auto d = testsupport::random_dataset(rng, n);
    const auto r = five_by_two_cv(d, Attribute::Education, 3, DistanceConfig{}, 42);
    ASSERT_EQ(r.folds.size(), 10u);
    for (std::size_t rep = 0; rep < 5; ++rep) {
      EXPECT_EQ(r.folds[2 * rep].test_user_ids.size(), (n + 1) / 2);
      std::map<std::string, int> seen;
      for (std::size_t f = 0; f < 2; ++f) {
        for (const auto& id : r.folds[2 * rep + f].test_user_ids) ++seen[id];
      }
      EXPECT_EQ(seen.size(), n);
      for (const auto& [id, count] : seen) EXPECT_EQ(count, 1) << id;
    }
  }
}

TEST(CrossValidation, FoldMetricsMatchBruteForce) {
  Rng rng(12);
  const auto d = testsupport::random_dataset(rng, 30);
  const auto target = Attribute::Location;
  const auto r = five_by_two_cv(d, target, 3, DistanceConfig{}, 7);
  for (const auto& fold : r.folds) {
    std::vector<const UserVector*> train;
    for (const auto& u : d.users) {
      if (std::find(fold.test_user_ids.begin(), fold.test_user_ids.end(), u.user_id()) == fold.test_user_ids.end()) {
        train.push_back(&u);
      }
    }
    std::size_t correct = 0;
    double err = 0;
    for (const auto& id : fold.test_user_ids) {
      const auto& q = d.at(id);
      std::vector<std::pair<int, std::string>> scored;
      const auto dq = disclosure_vector(q);
      for (const auto* t : train) {
        const auto dt = disclosure_vector(*t);
        int diff = 0;
        for (auto a : kAllAttributes) diff += (a != target && dq[a] != dt[a]) ? 1 : 0;
        scored.emplace_back(diff, t->user_id());
      }
      std::sort(scored.begin(), scored.end());
      int votes = 0;
      for (int i = 0; i < 3; ++i) votes += is_disclosed(d.at(scored[i].second), target) ? 1 : 0;
      const bool y = is_disclosed(q, target);
      correct += ((votes >= 2) == y) ? 1 : 0;
      err += std::abs(votes / 3.0 - (y ? 1.0 : 0.0));
    }
    const double n = static_cast<double>(fold.test_user_ids.size());
    EXPECT_NEAR(fold.metrics.accuracy, correct / n, 1e-12);
    EXPECT_NEAR(fold.metrics.mae, err / n, 1e-12);
  }
  std::vector<double> acc;
  for (const auto& f : r.folds) acc.push_back(f.metrics.accuracy);
  EXPECT_NEAR(r.mean_accuracy, mean_of(acc), 1e-15);
  EXPECT_NEAR(r.accuracy_variance, sample_variance(acc), 1e-15);
}

TEST(CrossValidation, DeterministicPerSeed) {
  Rng rng(9);
  const auto d = testsupport::random_dataset(rng, 50);
  const auto a = cv_to_json(five_by_two_cv(d, Attribute::Education, 3, DistanceConfig{}, 42)).dump();
  const auto b = cv_to_json(five_by_two_cv(d, Attribute::Education, 3, DistanceConfig{}, 42)).dump();
  const auto c = cv_to_json(five_by_two_cv(d, Attribute::Education, 3, DistanceConfig{}, 43)).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(CrossValidation, SmallDatasetAndDegenerateTarget) {
  Rng rng(1);
  const auto small = testsupport::random_dataset(rng, 5);
  EXPECT_THROW(five_by_two_cv(small, Attribute::Education, 3, DistanceConfig{}, 1), InvalidInput);
  std::vector<UserVector> users;
  for (int i = 0; i < 10; ++i) users.push_back(testsupport::simple_user("s" + std::to_string(i), 1980 + i));
  const auto r = five_by_two_cv(make_dataset(users), Attribute::Religion, 3, DistanceConfig{}, 1);
  EXPECT_TRUE(r.degenerate);
  EXPECT_DOUBLE_EQ(r.mean_accuracy, 1.0);
  EXPECT_NE(render_cv_table({r}).find("degenerate"), std::string::npos);
}

TEST(CrossValidation, MixedModeRuns) {
  Rng rng(6);
  const auto d = testsupport::random_dataset(rng, 24);
  DistanceConfig cfg;
  cfg.mode = DistanceMode::MixedCloseness;
  const auto r = five_by_two_cv(d, Attribute::Relationship, 3, cfg, 5);
  EXPECT_GE(r.mean_accuracy, 0.0);
  EXPECT_LE(r.mean_accuracy, 1.0);
  EXPECT_GE(r.mean_mae, 0.0);
  EXPECT_LE(r.mean_mae, 1.0);
}
