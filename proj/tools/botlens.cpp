// SPDX-License-Identifier: Apache-2.0
// botlens: bot detection and campaign analytics over tweet archives.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "botlens/report/commands.hpp"

namespace {

using namespace botlens;
using namespace botlens::report;

/// JSON config: top-level scalars apply to the running command when it has
/// an option of that name; objects named after a command apply to it only.
/// Keys may use '_' or '-'. Command-line flags always win.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* app) : app_(app) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        if (!app_->get_subcommand_no_throw(key)) throw CLI::ConfigError("unknown config section '" + key + "'");
        for (const auto& [k, v] : value.items()) items.push_back({{key}, option_name(k), inputs(k, v)});
        continue;
      }
      for (const auto* sub : app_->get_subcommands())
        if (sub->get_option_no_throw("--" + option_name(key)))
          items.push_back({{sub->get_name()}, option_name(key), inputs(key, value)});
    }
    return items;
  }

 private:
  static std::string option_name(std::string k) {
    for (auto& c : k)
      if (c == '_') c = '-';
    return k;
  }

  static std::vector<std::string> inputs(const std::string& key, const nlohmann::json& v) {
    if (v.is_array()) {
      std::vector<std::string> out;
      for (const auto& e : v) out.push_back(scalar(key, e));
      return out;
    }
    return {scalar(key, v)};
  }

  static std::string scalar(const std::string& key, const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConfigError("config value for '" + key + "' must be a string, number, boolean or list");
  }

  const CLI::App* app_;
};

TimeWindow window_or_throw(const std::string& s, const char* flag) {
  auto w = parse_window(s);
  if (!w) throw UsageError(std::string(flag) + " expects <start>/<end> timestamps, got '" + s + "'");
  if (!w->valid()) throw UsageError(std::string(flag) + " ends before it starts");
  return *w;
}

std::vector<std::string> campaign_terms(const std::vector<std::string>& given, const std::string& preset) {
  std::vector<std::string> terms = given;
  if (preset == "macronleaks") terms.insert(terms.end(), corpus::macronleaks_terms().begin(), corpus::macronleaks_terms().end());
  else if (preset == "election")
    terms.insert(terms.end(), corpus::election_keywords().begin(), corpus::election_keywords().end());
  else if (!preset.empty()) throw UsageError("unknown campaign preset '" + preset + "'");
  return terms;
}

int exit_code(ExitCode c) { return static_cast<int>(c); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"botlens: social-bot detection and disinformation-campaign analytics for tweet archives"};
  app.set_version_flag("--version", std::string(BOTLENS_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "JSON config file; command-line flags take precedence");
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);

  // train
  TrainOptions train;
  auto* c_train = app.add_subcommand("train", "Fit the account-level classifier and cross-validate it");
  c_train->add_option("training_csv", train.train_csv, "Labeled feature CSV")->required()->check(CLI::ExistingFile);
  c_train->add_option("-o,--out", train.out, "Model file to write")->required();
  c_train->add_option("--seed", train.seed, "Seed for fold assignment")->capture_default_str();
  c_train->add_option("--l2", train.l2, "L2 penalty")->capture_default_str();
  c_train->add_option("--max-iters", train.max_iters, "Gradient-descent iteration cap")->capture_default_str();
  c_train->add_option("--tol", train.tol, "Convergence tolerance on the gradient norm")->capture_default_str();
  c_train->add_option("--folds", train.folds, "Cross-validation folds")->capture_default_str();
  c_train->add_option("--threshold", train.threshold, "Bot probability threshold")->capture_default_str();

  // shared corpus flags
  auto exec_flags = [](CLI::App* c, ExecOptions& e) {
    c->add_option("--threads", e.threads, "Worker threads, 0 = all hardware threads")->capture_default_str();
    c->add_option("--shards", e.shards, "Aggregation shards")->capture_default_str()->check(CLI::PositiveNumber);
  };
  std::string classify_preset, analyze_preset;
  auto campaign_flags = [](CLI::App* c, CampaignOptions& k, std::string& preset) {
    c->add_option("--campaign-terms", k.terms, "Comma-separated campaign terms")->delimiter(',');
    c->add_option("--campaign-preset", preset, "Bundled term list")->check(CLI::IsMember({"macronleaks", "election"}));
    c->add_option("--match-fields", k.match_fields, "hashtags, text or hashtags,text")->capture_default_str();
  };

  // classify
  ClassifyOptions classify;
  auto* c_classify = app.add_subcommand("classify", "Label every corpus user as bot or human");
  c_classify->add_option("corpus", classify.inputs, "NDJSON corpus files (plain or gzip)")->required()->check(CLI::ExistingFile);
  c_classify->add_option("-m,--model", classify.model, "Model from `train`")->required()->check(CLI::ExistingFile);
  c_classify->add_option("-o,--out", classify.out, "Output directory")->required();
  c_classify->add_flag("--verified-are-human", classify.verified_are_human, "Force verified accounts to human");
  campaign_flags(c_classify, classify.campaign, classify_preset);
  exec_flags(c_classify, classify.exec);

  // analyze
  AnalyzeOptions analyze;
  std::string t_variant = "welch", window_a, window_b, partition, traces;
  auto* c_analyze = app.add_subcommand("analyze", "Build a report bundle of corpus analytics");
  c_analyze->add_option("corpus", analyze.inputs, "NDJSON corpus files (plain or gzip)")->required()->check(CLI::ExistingFile);
  c_analyze->add_option("-o,--out", analyze.out, "Output directory")->required();
  c_analyze->add_option("-p,--partition", partition, "user_id,label CSV, e.g. population.csv from classify")
      ->check(CLI::ExistingFile);
  c_analyze->add_option("--select", analyze.selectors,
                        "Comma-separated analyses: timeline, ranks, languages, distributions, compare, correlate, "
                        "deltas, dormancy, or all (default: every analysis whose inputs are given)")
      ->delimiter(',');
  campaign_flags(c_analyze, analyze.campaign, analyze_preset);
  c_analyze->add_option("--stoplist", analyze.stoplists, "Extra stopword file, one word per line")
      ->check(CLI::ExistingFile);
  bool no_default_stoplist = false;
  c_analyze->add_flag("--no-default-stoplist", no_default_stoplist, "Drop the bundled English/French stopwords");
  c_analyze->add_option("--top", analyze.top, "Rows kept in rank and follower-delta tables, 0 = all")
      ->capture_default_str();
  c_analyze->add_option("--bin-seconds", analyze.bin_seconds, "Timeline bin width")->capture_default_str();
  c_analyze->add_flag("--split-retweets", analyze.split_retweets, "Add original/retweet timeline series");
  c_analyze->add_option("--t-variant", t_variant, "welch or pooled")
      ->check(CLI::IsMember({"welch", "pooled"}))
      ->capture_default_str();
  c_analyze->add_option("--window-a", window_a, "Earlier campaign window <start>/<end>");
  c_analyze->add_option("--window-b", window_b, "Later campaign window <start>/<end>");
  c_analyze->add_option("--min-a", analyze.min_a, "Events required in window A")->capture_default_str();
  c_analyze->add_option("--min-b", analyze.min_b, "Events required in window B")->capture_default_str();
  c_analyze->add_option("--max-gap", analyze.max_gap, "Events allowed between the windows")->capture_default_str();
  c_analyze->add_option("--traces", traces, "user_id,timestamp activity file for dormancy")->check(CLI::ExistingFile);
  exec_flags(c_analyze, analyze.exec);

  // gen-fixture
  FixtureOptions fixture;
  std::string fixture_out, fixture_window, fixture_window_a;
  std::uint64_t fixture_tweets = 0;
  auto* c_fixture = app.add_subcommand("gen-fixture", "Write a synthetic corpus with ground truth");
  c_fixture->add_option("-o,--out", fixture_out, "Output directory")->required();
  c_fixture->add_option("--users", fixture.users, "Accounts")->capture_default_str();
  c_fixture->add_option("--bot-fraction", fixture.bot_fraction, "Share of bot accounts")->capture_default_str();
  c_fixture->add_option("--seed", fixture.seed, "Generator seed")->capture_default_str();
  c_fixture->add_option("--tweets", fixture_tweets, "Exact tweet total (default: drawn per account)");
  c_fixture->add_option("--retweet-rate", fixture.retweet_rate, "Share of tweets that retweet earlier ones")
      ->capture_default_str();
  c_fixture->add_option("--campaign-scale", fixture.campaign_scale, "Multiplier on campaign-hashtag rates")
      ->capture_default_str();
  c_fixture->add_option("--dormant", fixture.dormant, "Planted dormant accounts")->capture_default_str();
  c_fixture->add_option("--near-misses", fixture.near_misses, "Accounts failing one dormancy threshold")
      ->capture_default_str();
  c_fixture->add_option("--creation-gap", fixture.creation_gap, "Accounts created inside window A")
      ->capture_default_str();
  c_fixture->add_option("--train", fixture.train, "Labeled training examples")->capture_default_str();
  c_fixture->add_option("--malformed", fixture.malformed, "Broken lines to inject")->capture_default_str();
  c_fixture->add_option("--duplicates", fixture.duplicates, "Duplicated lines to inject")->capture_default_str();
  c_fixture->add_option("--window", fixture_window, "Corpus window <start>/<end>");
  c_fixture->add_option("--window-a", fixture_window_a, "Earlier activity window <start>/<end>");

  // validate-bundle
  std::string bundle_dir;
  auto* c_validate = app.add_subcommand("validate-bundle", "Re-hash a bundle against its manifest");
  c_validate->add_option("dir", bundle_dir, "Bundle directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code(ExitCode::usage);
  }

  try {
    if (*c_train) {
      cmd_train(train, std::cout, std::cerr);
    } else if (*c_classify) {
      classify.campaign.terms = campaign_terms(classify.campaign.terms, classify_preset);
      cmd_classify(classify, std::cout, std::cerr);
    } else if (*c_analyze) {
      analyze.campaign.terms = campaign_terms(analyze.campaign.terms, analyze_preset);
      analyze.default_stoplist = !no_default_stoplist;
      analyze.t_variant = t_variant == "pooled" ? stats::TVariant::pooled : stats::TVariant::welch;
      if (!partition.empty()) analyze.partition = partition;
      if (!traces.empty()) analyze.traces = traces;
      if (!window_a.empty()) analyze.window_a = window_or_throw(window_a, "--window-a");
      if (!window_b.empty()) analyze.window_b = window_or_throw(window_b, "--window-b");
      if (analyze.window_a.has_value() != analyze.window_b.has_value())
        throw UsageError("--window-a and --window-b must be given together");
      cmd_analyze(analyze, std::cout, std::cerr);
    } else if (*c_fixture) {
      if (c_fixture->count("--tweets")) fixture.tweets = fixture_tweets;
      if (!fixture_window.empty()) fixture.window = window_or_throw(fixture_window, "--window");
      if (!fixture_window_a.empty()) fixture.window_a = window_or_throw(fixture_window_a, "--window-a");
      cmd_gen_fixture(fixture, fixture_out, std::cout);
    } else if (*c_validate) {
      if (!cmd_validate_bundle(bundle_dir, std::cout, std::cerr)) return exit_code(ExitCode::data);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(ExitCode::usage);
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return exit_code(ExitCode::numeric);
  } catch (const std::exception& e) {
    // DataError, filesystem and I/O failures
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(ExitCode::data);
  }
  return exit_code(ExitCode::ok);
}
