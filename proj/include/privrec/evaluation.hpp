#pragma once

// 5x2 cross-validation of the k-NN disclosure predictor.

#include <cstdint>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "privrec/error.hpp"
#include "privrec/ingest.hpp"
#include "privrec/random.hpp"
#include "privrec/recommend.hpp"

namespace privrec {

struct Prediction {
  double p = 0.0;  // fraction of neighbors disclosing
  bool y = false;  // query actually discloses
};

struct Metrics {
  double accuracy = 0.0;
  double mae = 0.0;
};

// A vote of exactly one half predicts NotDisclosed.
inline Metrics classification_metrics(std::span<const Prediction> predictions) {
  if (predictions.empty()) throw InvalidInput("classification metrics need at least one prediction");
  std::size_t correct = 0;
  double abs_err = 0.0;
  for (const auto& pr : predictions) {
    const bool predicted = pr.p > 0.5;
    if (predicted == pr.y) ++correct;
    abs_err += std::abs(pr.p - (pr.y ? 1.0 : 0.0));
  }
  const double n = static_cast<double>(predictions.size());
  return {static_cast<double>(correct) / n, abs_err / n};
}

struct FoldResult {
  std::size_t replication = 0;
  std::size_t fold = 0;  // 0: train on B, test on A; 1: train on A, test on B
  std::vector<std::string> test_user_ids;
  Metrics metrics;
};

struct CvResult {
  Attribute target = Attribute::Education;
  std::size_t k = 3;
  std::uint64_t seed = 0;
  bool degenerate = false;  // only one class present for the target
  std::vector<FoldResult> folds;  // 10 entries, ordered by (replication, fold)

  double mean_accuracy = 0.0;
  double accuracy_variance = 0.0;
  double mean_mae = 0.0;
  double mae_variance = 0.0;
  // Aggregation over the five per-replication means instead of the ten folds.
  double replication_mean_accuracy = 0.0;
  double replication_accuracy_variance = 0.0;
  double replication_mean_mae = 0.0;

  std::vector<double> fold_accuracies() const {
    std::vector<double> v;
    for (const auto& f : folds) v.push_back(f.metrics.accuracy);
    return v;
  }
  std::vector<double> fold_maes() const {
    std::vector<double> v;
    for (const auto& f : folds) v.push_back(f.metrics.mae);
    return v;
  }
};

inline double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sample variance (n - 1 denominator).
inline double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

inline constexpr std::size_t kReplications = 5;
inline constexpr std::uint64_t kCvStreamDomain = 0x6376'3578'3200ULL;  // "cv5x2"

// Replication r shuffles the dataset with its own stream, puts the first
// ceil(n/2) records in fold A and the rest in fold B, then tests each half
// against the other.
inline CvResult five_by_two_cv(const Dataset& d, Attribute target, std::size_t k, DistanceConfig cfg,
                               std::uint64_t seed) {
  const std::size_t n = d.users.size();
  if (k == 0) throw InvalidInput("k must be positive");
  if (n < 2 * k) {
    throw InvalidInput("5x2 cross-validation needs at least 2k = " + std::to_string(2 * k) + " users, got " +
                       std::to_string(n));
  }
  cfg.excluded = target;
  cfg.validate();

  CvResult result;
  result.target = target;
  result.k = k;
  result.seed = seed;
  std::size_t disclosing = 0;
  for (const auto& u : d.users) disclosing += is_disclosed(u, target) ? 1 : 0;
  result.degenerate = disclosing == 0 || disclosing == n;

  for (std::size_t rep = 0; rep < kReplications; ++rep) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed, kCvStreamDomain, rep);
    rng.shuffle(std::span<std::size_t>(order));
    const std::size_t half = (n + 1) / 2;
    const std::vector<std::size_t> fold_a(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half));
    const std::vector<std::size_t> fold_b(order.begin() + static_cast<std::ptrdiff_t>(half), order.end());

    for (std::size_t fold = 0; fold < 2; ++fold) {
      const auto& test = fold == 0 ? fold_a : fold_b;
      const auto& train = fold == 0 ? fold_b : fold_a;
      std::vector<UserVector> pool;
      pool.reserve(train.size());
      for (auto i : train) pool.push_back(d.users[i]);

      FoldResult fr;
      fr.replication = rep;
      fr.fold = fold;
      std::vector<Prediction> predictions;
      for (auto i : test) {
        const auto& query = d.users[i];
        const auto neighbors = nearest_neighbors(query, pool, k, cfg, d.metadata.reference_year);
        std::size_t votes = 0;
        for (const auto& nb : neighbors) votes += nb.target_disclosed.value() ? 1 : 0;
        predictions.push_back({static_cast<double>(votes) / static_cast<double>(k), is_disclosed(query, target)});
        fr.test_user_ids.push_back(query.user_id());
      }
      fr.metrics = classification_metrics(predictions);
      result.folds.push_back(std::move(fr));
    }
  }

  const auto acc = result.fold_accuracies();
  const auto mae = result.fold_maes();
  result.mean_accuracy = mean_of(acc);
  result.accuracy_variance = sample_variance(acc);
  result.mean_mae = mean_of(mae);
  result.mae_variance = sample_variance(mae);
  std::vector<double> rep_acc, rep_mae;
  for (std::size_t r = 0; r < kReplications; ++r) {
    rep_acc.push_back((acc[2 * r] + acc[2 * r + 1]) / 2.0);
    rep_mae.push_back((mae[2 * r] + mae[2 * r + 1]) / 2.0);
  }
  result.replication_mean_accuracy = mean_of(rep_acc);
  result.replication_accuracy_variance = sample_variance(rep_acc);
  result.replication_mean_mae = mean_of(rep_mae);
  return result;
}

inline nlohmann::json cv_to_json(const CvResult& r) {
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& f : r.folds) {
    folds.push_back({{"replication", f.replication},
                     {"fold", f.fold},
                     {"accuracy", f.metrics.accuracy},
                     {"mae", f.metrics.mae},
                     {"test_user_ids", f.test_user_ids}});
  }
  return {{"target", to_string(r.target)},
          {"k", r.k},
          {"seed", r.seed},
          {"degenerate", r.degenerate},
          {"mean_accuracy", r.mean_accuracy},
          {"accuracy_variance", r.accuracy_variance},
          {"mean_mae", r.mean_mae},
          {"mae_variance", r.mae_variance},
          {"replication_mean_accuracy", r.replication_mean_accuracy},
          {"replication_accuracy_variance", r.replication_accuracy_variance},
          {"replication_mean_mae", r.replication_mean_mae},
          {"folds", folds}};
}

// One column per target, rows as in a 5x2 summary table.
inline std::string render_cv_table(const std::vector<CvResult>& results) {
  std::ostringstream os;
  if (results.empty()) return "";
  os << "5x2-fold cross validation (k=" << results.front().k << ", seed=" << results.front().seed << ")\n";
  auto row = [&](std::string_view label, auto&& cell) {
    os << std::left << std::setw(34) << label;
    for (const auto& r : results) os << std::right << std::setw(14) << cell(r);
    os << "\n";
  };
  auto fixed = [](double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
  };
  row("Attribute", [](const CvResult& r) { return std::string(to_string(r.target)); });
  row("Correctly classified instances", [&](const CvResult& r) { return fixed(100.0 * r.mean_accuracy, 2) + "%"; });
  row("Mean absolute error", [&](const CvResult& r) { return fixed(r.mean_mae, 4); });
  row("Accuracy variance (10 folds)", [&](const CvResult& r) { return fixed(r.accuracy_variance, 6); });
  row("Accuracy variance (5 reps)", [&](const CvResult& r) { return fixed(r.replication_accuracy_variance, 6); });
  bool any_degenerate = false;
  for (const auto& r : results) any_degenerate = any_degenerate || r.degenerate;
  if (any_degenerate) {
    os << "note: a target marked degenerate has only one class present\n";
    row("Degenerate", [](const CvResult& r) { return std::string(r.degenerate ? "yes" : "no"); });
  }
  return os.str();
}

}  // namespace privrec
