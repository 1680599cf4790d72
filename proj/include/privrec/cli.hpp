#pragma once

// Command-line front end shared by the `privrec` binary and the tests.
// Exit status: 0 success, 1 input/configuration error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "privrec/audit.hpp"
#include "privrec/categorize.hpp"
#include "privrec/evaluation.hpp"
#include "privrec/ingest.hpp"
#include "privrec/recommend.hpp"
#include "privrec/synth.hpp"

namespace privrec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitUsage = 2;

struct CliInvocation {
  std::string profiles;
  std::string interests;
  std::string albums;
  std::string dataset;  // combined JSON alternative to the three CSVs
  std::string dict;
  std::optional<int> reference_year;
  std::string user;
  std::size_t k = 3;
  std::string policy = "majority";
  std::string mode = "binary";
  std::vector<std::string> targets;
  std::uint64_t seed = 0;
  std::string config;
  std::string format = "text";
  std::string out;

  // subcommand-specific
  std::string labels;
  std::string model;
  std::optional<std::size_t> max_depth;
  std::size_t min_leaf = 2;
  std::size_t top_interest_features = 25;
  std::size_t top = 10;
  std::optional<std::size_t> users;
};

namespace detail {

inline bool json_output(const CliInvocation& inv) { return inv.format == "json"; }

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline NormalizationDictionary load_dictionary(const CliInvocation& inv) {
  return inv.dict.empty() ? NormalizationDictionary::defaults() : NormalizationDictionary::load(inv.dict);
}

inline Dataset load_input(const CliInvocation& inv) {
  const auto dict = load_dictionary(inv);
  Dataset d;
  if (!inv.dataset.empty()) {
    d = load_dataset_json(inv.dataset, dict);
  } else {
    if (inv.profiles.empty()) throw InvalidInput("no input: pass --profiles (with --interests/--albums) or --dataset");
    std::ifstream p(inv.profiles, std::ios::binary);
    if (!p) throw IngestError("cannot open '" + inv.profiles + "'");
    std::ifstream i_file, a_file;
    std::istringstream empty;
    std::istream* i = &empty;
    std::istream* a = &empty;
    if (!inv.interests.empty()) {
      i_file.open(inv.interests, std::ios::binary);
      if (!i_file) throw IngestError("cannot open '" + inv.interests + "'");
      i = &i_file;
    }
    if (!inv.albums.empty()) {
      a_file.open(inv.albums, std::ios::binary);
      if (!a_file) throw IngestError("cannot open '" + inv.albums + "'");
      a = &a_file;
    }
    d = parse_dataset(p, *i, *a, dict, {}, inv.profiles, inv.interests.empty() ? "interests" : inv.interests,
                      inv.albums.empty() ? "albums" : inv.albums);
  }
  if (inv.reference_year) d.metadata.reference_year = *inv.reference_year;
  for (const auto& u : d.users) (void)d.age_of(u);  // rejects birth years after the reference year
  return d;
}

inline DistanceConfig load_distance_config(const CliInvocation& inv) {
  DistanceConfig cfg;
  const auto mode = parse_distance_mode(inv.mode);
  if (!mode) throw InvalidInput("unknown distance mode '" + inv.mode + "'");
  cfg.mode = *mode;
  if (!inv.config.empty()) {
    std::ifstream in(inv.config);
    if (!in) throw ConfigError("cannot open config '" + inv.config + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(inv.config + ": " + e.what());
    }
    cfg = distance_config_from_json(j.contains("distance") ? j.at("distance") : j, cfg);
  }
  cfg.validate();
  return cfg;
}

inline std::string user_label(const UserVector& u) {
  return u.profile.name ? *u.profile.name + " (" + u.user_id() + ")" : u.user_id();
}

inline std::string run_audit(const CliInvocation& inv) {
  const auto d = load_input(inv);
  std::vector<const UserVector*> selected;
  if (!inv.user.empty()) {
    selected.push_back(&d.at(inv.user));
  } else {
    for (const auto& u : d.users) selected.push_back(&u);
  }
  if (json_output(inv)) {
    nlohmann::json reports = nlohmann::json::array();
    for (const auto* u : selected) {
      reports.push_back(report_to_json(audit_albums(u->albums), u->user_id(), u->profile.name.value_or("")));
    }
    return dump({{"reports", reports}});
  }
  std::string text;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (i) text += "\n";
    text += render_report(audit_albums(selected[i]->albums), user_label(*selected[i]));
  }
  return text;
}

inline std::string run_label(const CliInvocation& inv) {
  const auto d = load_input(inv);
  if (json_output(inv)) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& u : d.users) {
      const auto& s = u.album_summary;
      rows.push_back({{"user_id", u.user_id()},
                      {"total_albums", s.total()},
                      {"n_everyone", s.n_everyone()},
                      {"n_fof", s.n_fof()},
                      {"n_networks", s.n_networks()},
                      {"n_friends", s.n_friends()},
                      {"n_custom", s.n_custom()},
                      {"privacy_category", to_string(rule_label(s))}});
    }
    return dump({{"labels", rows}});
  }
  std::ostringstream os;
  auto header = profile_columns();
  header.push_back("privacy_category");
  csv::write_row(os, header);
  for (const auto& u : d.users) {
    const auto r = to_raw(u.profile);
    csv::write_row(os, {r.user_id, r.name, r.gender, r.birth_year, r.birthday, r.education, r.degree, r.hometown,
                        r.location, r.political, r.relationship, r.religion,
                        std::string(to_string(rule_label(u.album_summary)))});
  }
  return os.str();
}

inline std::vector<LabeledUser> labeled_users(const CliInvocation& inv, const Dataset& d) {
  if (inv.labels.empty()) return label_dataset(d);
  std::ifstream in(inv.labels, std::ios::binary);
  if (!in) throw IngestError("cannot open labels '" + inv.labels + "'");
  auto rows = csv::read(in, inv.labels);
  if (rows.empty()) throw IngestError(inv.labels + ": empty label file");
  const auto& header = rows.front().fields;
  const auto col = [&](std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (text::trim(header[i]) == name) return i;
    }
    throw IngestError(inv.labels + ": missing column '" + std::string(name) + "'");
  };
  const auto id_col = col("user_id");
  const auto cat_col = col("privacy_category");
  std::vector<LabeledUser> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto where = inv.labels + ":" + std::to_string(row.line);
    if (row.fields.size() != header.size()) throw IngestError(where + ": wrong number of fields");
    const auto category = parse_category(row.fields[cat_col]);
    if (!category) throw IngestError(where + ": unknown privacy category '" + row.fields[cat_col] + "'");
    const auto* u = d.find(text::trim(row.fields[id_col]));
    if (!u) throw IngestError(where + ": unknown user_id '" + row.fields[id_col] + "'");
    out.push_back({*u, *category});
  }
  return out;
}

inline std::string run_tree_train(const CliInvocation& inv) {
  const auto d = load_input(inv);
  TreeConfig cfg;
  cfg.max_depth = inv.max_depth;
  cfg.min_leaf = inv.min_leaf;
  cfg.top_interest_features = inv.top_interest_features;
  const auto tree = train_decision_tree(labeled_users(inv, d), cfg, d.metadata.reference_year);
  if (json_output(inv)) return dump(tree_to_json(tree));
  return export_tree(tree);
}

inline DecisionTree load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open model '" + path + "'");
  try {
    return tree_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline std::string run_tree_show(const CliInvocation& inv) {
  const auto tree = load_tree(inv.model);
  std::optional<PrivacyCategory> prediction;
  std::string user_id;
  if (!inv.user.empty()) {
    const auto d = load_input(inv);
    const auto& u = d.at(inv.user);
    user_id = u.user_id();
    prediction = predict_category(tree, u);
  }
  if (json_output(inv)) {
    auto j = nlohmann::json{{"tree", tree_to_json(tree)}};
    if (prediction) j["prediction"] = {{"user_id", user_id}, {"privacy_category", to_string(*prediction)}};
    return dump(j);
  }
  auto text = export_tree(tree);
  if (prediction) text += "prediction for " + user_id + ": " + std::string(to_string(*prediction)) + "\n";
  return text;
}

inline std::string run_recommend(const CliInvocation& inv) {
  const auto d = load_input(inv);
  const auto& query = d.at(inv.user);
  const auto policy = parse_policy(inv.policy);
  if (!policy) throw InvalidInput("unknown policy '" + inv.policy + "'");
  const auto cfg = load_distance_config(inv);
  std::vector<Attribute> attributes;
  for (const auto& t : inv.targets) {
    const auto a = parse_attribute(t);
    if (!a) throw InvalidInput("unknown attribute '" + t + "'");
    attributes.push_back(*a);
  }
  if (attributes.empty()) attributes.assign(kAllAttributes.begin(), kAllAttributes.end());
  const auto recs = recommend_all(query, d, inv.k, *policy, cfg, attributes);
  if (json_output(inv)) return dump(recommendations_to_json(query.user_id(), recs, inv.k, cfg.mode));
  return render_recommendations(user_label(query), recs);
}

inline std::string run_evaluate(const CliInvocation& inv) {
  const auto d = load_input(inv);
  const auto cfg = load_distance_config(inv);
  std::vector<std::string> targets = inv.targets;
  if (targets.empty()) targets = {"education"};
  std::vector<CvResult> results;
  for (const auto& t : targets) {
    const auto a = parse_attribute(t);
    if (!a) throw InvalidInput("unknown attribute '" + t + "'");
    results.push_back(five_by_two_cv(d, *a, inv.k, cfg, inv.seed));
  }
  if (json_output(inv)) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) arr.push_back(cv_to_json(r));
    return dump({{"mode", to_string(cfg.mode)}, {"results", arr}});
  }
  return render_cv_table(results);
}

inline std::string run_synth(const CliInvocation& inv) {
  SynthConfig cfg = inv.config.empty() ? SynthConfig{} : load_synth_config(inv.config);
  cfg.seed = inv.seed;
  if (inv.users) cfg.n_users = *inv.users;
  const auto d = generate_population(cfg, load_dictionary(inv));
  if (json_output(inv)) return dump(dataset_to_json(d));
  if (inv.out.empty()) throw InvalidInput("synth writes CSV files: pass --out <directory> (or --format json)");
  const std::filesystem::path dir(inv.out);
  std::filesystem::create_directories(dir);
  write_dataset_csv(d, dir / "profiles.csv", dir / "interests.csv", dir / "albums.csv");
  std::size_t albums = 0, interests = 0;
  for (const auto& u : d.users) {
    albums += u.albums.size();
    interests += u.interests.size();
  }
  std::ostringstream os;
  os << "wrote " << d.users.size() << " users, " << interests << " interests, " << albums << " albums to "
     << dir.string() << " (seed " << cfg.seed << ")\n";
  return os.str();
}

inline std::string run_stats(const CliInvocation& inv) {
  const auto d = load_input(inv);
  const auto stats = missing_value_stats(d);
  const auto ranking = top_interests(d, inv.top);
  if (json_output(inv)) return dump(stats_to_json(stats, ranking));
  return render_stats(stats, ranking);
}

inline void add_inputs(CLI::App* cmd, CliInvocation& inv) {
  cmd->add_option("--profiles", inv.profiles, "Profiles CSV");
  cmd->add_option("--interests", inv.interests, "Interests CSV");
  cmd->add_option("--albums", inv.albums, "Albums CSV");
  cmd->add_option("--dataset", inv.dataset, "Combined dataset JSON (instead of the CSV files)");
  cmd->add_option("--dict", inv.dict, "Normalization dictionary JSON");
  cmd->add_option("--reference-year", inv.reference_year, "Year ages are measured against (default 2013)");
}

inline void add_output(CLI::App* cmd, CliInvocation& inv) {
  cmd->add_option("--format", inv.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", inv.out, "Write output to this path instead of standard output");
}

}  // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"privrec: photo-album privacy audit, privacy categories and disclosure recommendations", "privrec"};
  app.require_subcommand(1);
  CliInvocation inv;
  using detail::add_inputs;
  using detail::add_output;

  auto* audit = app.add_subcommand("audit", "Report photo albums visible beyond friends");
  add_inputs(audit, inv);
  add_output(audit, inv);
  audit->add_option("--user", inv.user, "Audit only this user");

  auto* label = app.add_subcommand("label", "Append the rule-based privacy category to each profile");
  add_inputs(label, inv);
  add_output(label, inv);

  auto* tree = app.add_subcommand("tree", "Train or inspect the privacy-category decision tree");
  tree->require_subcommand(1);
  auto* train = tree->add_subcommand("train", "Train a tree on rule labels (or --labels)");
  add_inputs(train, inv);
  add_output(train, inv);
  train->add_option("--labels", inv.labels, "CSV with user_id and privacy_category columns");
  train->add_option("--max-depth", inv.max_depth, "Maximum depth");
  train->add_option("--min-leaf", inv.min_leaf, "Minimum rows per child")->check(CLI::PositiveNumber);
  train->add_option("--top-interests", inv.top_interest_features, "Number of interest features");
  auto* show = tree->add_subcommand("show", "Render a saved tree, optionally predicting one user");
  add_inputs(show, inv);
  add_output(show, inv);
  show->add_option("--model", inv.model, "Tree JSON written by `tree train --format json`")->required();
  show->add_option("--user", inv.user, "Predict this user's category");

  auto* recommend = app.add_subcommand("recommend", "Tighten-only disclosure advice for one user");
  add_inputs(recommend, inv);
  add_output(recommend, inv);
  recommend->add_option("--user", inv.user, "Query user id")->required();
  recommend->add_option("--k", inv.k, "Neighbors")->check(CLI::PositiveNumber);
  recommend->add_option("--policy", inv.policy, "majority|strict")->check(CLI::IsMember({"majority", "strict"}));
  recommend->add_option("--mode", inv.mode, "binary|mixed")->check(CLI::IsMember({"binary", "mixed"}));
  recommend->add_option("--target", inv.targets, "Only these attributes (repeatable)");
  recommend->add_option("--config", inv.config, "Distance config JSON");

  auto* evaluate = app.add_subcommand("evaluate", "5x2 cross-validation of the k-NN disclosure predictor");
  add_inputs(evaluate, inv);
  add_output(evaluate, inv);
  evaluate->add_option("--target", inv.targets, "Target attribute (repeatable; default education)");
  evaluate->add_option("--seed", inv.seed, "Shuffle seed")->required();
  evaluate->add_option("--k", inv.k, "Neighbors")->check(CLI::PositiveNumber);
  evaluate->add_option("--mode", inv.mode, "binary|mixed")->check(CLI::IsMember({"binary", "mixed"}));
  evaluate->add_option("--config", inv.config, "Distance config JSON");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic population");
  synth->add_option("--seed", inv.seed, "Generator seed")->required();
  synth->add_option("--config", inv.config, "Synthesis config JSON");
  synth->add_option("--users", inv.users, "Override the number of users");
  synth->add_option("--dict", inv.dict, "Normalization dictionary JSON");
  add_output(synth, inv);

  auto* stats = app.add_subcommand("stats", "Missing-value rates and most common interests");
  add_inputs(stats, inv);
  add_output(stats, inv);
  stats->add_option("--top", inv.top, "Number of interests to list")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::string output;
    if (audit->parsed()) {
      output = detail::run_audit(inv);
    } else if (label->parsed()) {
      output = detail::run_label(inv);
    } else if (train->parsed()) {
      output = detail::run_tree_train(inv);
    } else if (show->parsed()) {
      output = detail::run_tree_show(inv);
    } else if (recommend->parsed()) {
      output = detail::run_recommend(inv);
    } else if (evaluate->parsed()) {
      output = detail::run_evaluate(inv);
    } else if (synth->parsed()) {
      output = detail::run_synth(inv);
      if (!detail::json_output(inv)) {
        out << output;
        return kExitOk;
      }
    } else if (stats->parsed()) {
      output = detail::run_stats(inv);
    }
    if (inv.out.empty()) {
      out << output;
    } else {
      std::ofstream file(inv.out, std::ios::binary);
      if (!file) throw IngestError("cannot write '" + inv.out + "'");
      file << output;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace privrec::cli
