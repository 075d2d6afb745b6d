// SPDX-License-Identifier: Apache-2.0
// The command implementations behind the CLI. Each takes a plain options
// struct, writes its products, and reports through two streams: `out` for
// results, `err` for warnings. Failures are thrown as UsageError,
// DataError or NumericError and mapped to exit codes by the caller.
#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "botlens/analytics/engine.hpp"
#include "botlens/botdetect/cv.hpp"
#include "botlens/botdetect/io.hpp"
#include "botlens/report/bundle.hpp"
#include "botlens/report/fixture.hpp"
#include "botlens/report/writers.hpp"

namespace botlens::report {

// ---------------------------------------------------------------- train

struct TrainOptions {
  fs::path train_csv;
  fs::path out;  // model file
  std::uint64_t seed = 0;
  double l2 = 1e-4;
  int max_iters = 5000;
  double tol = 1e-8;
  std::size_t folds = 10;
  double threshold = 0.5;
};

inline std::string fold_table(const botdetect::CVReport& cv) {
  std::ostringstream o;
  char buf[128];
  o << "fold  n_train  n_test  accuracy     auc\n";
  for (std::size_t i = 0; i < cv.folds.size(); ++i) {
    const auto& f = cv.folds[i];
    std::snprintf(buf, sizeof buf, "%4zu  %7zu  %6zu  %8.4f  %6.4f\n", i + 1, f.n_train, f.n_test, f.accuracy, f.auc);
    o << buf;
  }
  std::snprintf(buf, sizeof buf, "mean  %7s  %6s  %8.4f  %6.4f\n", "", "", cv.mean_accuracy, cv.mean_auc);
  o << buf;
  return o.str();
}

inline botdetect::Model cmd_train(const TrainOptions& o, std::ostream& out, std::ostream& /*err*/) {
  if (o.folds < 2) throw UsageError("--folds must be at least 2");
  if (!(o.threshold > 0.0 && o.threshold < 1.0)) throw UsageError("--threshold must lie in (0, 1)");
  if (!(o.l2 >= 0.0)) throw UsageError("--l2 must be nonnegative");
  if (o.max_iters < 1) throw UsageError("--max-iters must be positive");
  const auto examples = botdetect::read_training_csv(o.train_csv);
  const botdetect::Hyperparameters hyper{o.l2, o.max_iters, o.tol, o.seed};
  auto model = botdetect::train_logreg(examples, hyper);
  model.threshold = o.threshold;
  auto cv = botdetect::cross_validate(examples, o.folds, o.seed, hyper);
  out << fold_table(cv);
  model.manifest.cv = std::move(cv);

  if (o.out.has_parent_path()) fs::create_directories(o.out.parent_path());
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot write " + o.out.string());
  f << botdetect::to_json(model).dump(2) << '\n';
  if (!f) throw DataError("failed writing " + o.out.string());
  return model;
}

// ---------------------------------------------------------------- shared

struct ExecOptions {
  std::size_t threads = 1;  // 0 = hardware threads
  std::size_t shards = 1;
};

struct CampaignOptions {
  std::vector<std::string> terms;
  std::string match_fields = "hashtags";

  bool enabled() const { return !terms.empty(); }
};

inline std::optional<corpus::CampaignFilter> make_filter(const CampaignOptions& c) {
  if (!c.enabled()) return std::nullopt;
  return corpus::CampaignFilter(c.terms, corpus::parse_match_fields(c.match_fields));
}

inline Json campaign_config(const std::optional<corpus::CampaignFilter>& f) {
  if (!f) return nullptr;
  Json fields = Json::array();
  if (f->on(corpus::MatchField::hashtags)) fields.push_back("hashtags");
  if (f->on(corpus::MatchField::text)) fields.push_back("text");
  return {{"terms", f->terms()}, {"match_fields", fields}};
}

inline void warn_ingest(const corpus::IngestReport& r, std::ostream& err) {
  if (r.failed)
    err << "warning: " << r.failed << " of " << r.lines << " lines could not be parsed (details in ingest.json)\n";
  if (r.duplicate_ids) err << "warning: " << r.duplicate_ids << " duplicate tweet ids dropped\n";
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- classify

struct ClassifyOptions {
  std::vector<fs::path> inputs;
  fs::path model;
  fs::path out;
  bool verified_are_human = false;
  CampaignOptions campaign;
  ExecOptions exec;
};

inline botdetect::Population cmd_classify(const ClassifyOptions& o, std::ostream& out, std::ostream& err) {
  Stopwatch clock;
  if (o.inputs.empty()) throw UsageError("classify needs at least one corpus file");
  const auto model = botdetect::read_model(o.model);
  const auto filter = make_filter(o.campaign);
  BundleWriter w(o.out);

  analytics::EngineOptions eo;
  eo.threads = o.exec.threads;
  eo.shards = o.exec.shards;
  auto res = analytics::run_engine(o.inputs, analytics::Stoplist{}, nullptr, filter ? &*filter : nullptr, eo);
  warn_ingest(res.ingest, err);
  const auto& users = filter ? res.campaign->users : res.all.users;

  auto pop = botdetect::classify_population(model, users, {o.verified_are_human});
  if (pop.entries.empty()) err << "warning: no users to classify; population.csv is empty\n";
  if (pop.summary.incomplete)
    err << "warning: " << pop.summary.incomplete << " users lack some count fields and were scored with zeros\n";

  std::ostringstream csv;
  botdetect::write_population_csv(csv, pop);
  w.write("population.csv", csv.str());
  Json summary = to_json(pop.summary);
  summary["scope"] = filter ? "campaign" : "all";
  summary["threshold"] = model.threshold;
  summary["model_data_hash"] = model.manifest.data_hash;
  w.write("summary.json", dump(summary));
  w.write("ingest.json", dump(corpus::to_json(res.ingest)));

  RunManifest m;
  m.command = "classify";
  m.config = {{"verified_are_human", o.verified_are_human}, {"campaign", campaign_config(filter)}};
  m.seed = model.manifest.seed;
  for (const auto& p : o.inputs) m.inputs.push_back(digest_input(p, "corpus"));
  m.inputs.push_back(digest_input(o.model, "model"));
  m.counts = {{"tweets", res.ingest.parsed},
              {"tweets_in_scope", filter ? res.campaign->tweets : res.all.tweets},
              {"users", pop.summary.users},
              {"bots", pop.summary.bots},
              {"humans", pop.summary.humans}};
  m.threads = res.threads_used;
  m.shards = std::max<std::size_t>(1, o.exec.shards);
  m.wall_clock_seconds = clock.seconds();
  write_manifest(w, m);

  out << "classified " << pop.summary.users << " users: " << pop.summary.bots << " bots";
  if (pop.summary.bot_fraction) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *pop.summary.bot_fraction);
    out << " (fraction " << buf << ")";
  }
  out << "\n";
  return pop;
}

// ---------------------------------------------------------------- analyze

inline const std::vector<std::string>& analysis_selectors() {
  static const std::vector<std::string> v = {"timeline", "ranks",   "languages", "distributions",
                                             "compare",  "correlate", "deltas",  "dormancy"};
  return v;
}

struct AnalyzeOptions {
  std::vector<fs::path> inputs;
  std::optional<fs::path> partition;
  CampaignOptions campaign;
  /// Empty means every analysis whose inputs are available.
  std::vector<std::string> selectors;
  std::vector<fs::path> stoplists;
  bool default_stoplist = true;
  std::size_t top = 20;  // rank-table and follower-delta cutoff, 0 = all
  std::int64_t bin_seconds = 60;
  bool split_retweets = false;
  stats::TVariant t_variant = stats::TVariant::welch;
  std::optional<TimeWindow> window_a, window_b;
  std::uint64_t min_a = 5, min_b = 5, max_gap = 1;
  std::optional<fs::path> traces;
  fs::path out;
  ExecOptions exec;
};

struct AnalyzeResult {
  Json manifest;
  std::set<std::string> ran;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::set<std::string> resolve_selectors(const AnalyzeOptions& o, std::vector<std::string>& notes) {
  std::set<std::string> chosen;
  if (o.selectors.empty()) {
    for (const auto& s : analysis_selectors()) chosen.insert(s);
    if (!o.partition) {
      for (const char* s : {"compare", "correlate", "deltas"}) chosen.erase(s);
      notes.push_back("no partition given: compare, correlate and deltas skipped");
    }
    if (!o.window_a || !o.window_b) {
      chosen.erase("dormancy");
      notes.push_back("no --window-a/--window-b given: dormancy skipped");
    }
    return chosen;
  }
  for (const auto& s : o.selectors) {
    if (s == "all") {
      for (const auto& a : analysis_selectors()) chosen.insert(a);
      continue;
    }
    if (std::find(analysis_selectors().begin(), analysis_selectors().end(), s) == analysis_selectors().end())
      throw UsageError("unknown analysis selector '" + s + "'");
    chosen.insert(s);
  }
  for (const char* s : {"compare", "correlate", "deltas"})
    if (chosen.count(s) && !o.partition) throw UsageError(std::string(s) + " needs a partition (--partition)");
  if (chosen.count("dormancy") && (!o.window_a || !o.window_b))
    throw UsageError("dormancy needs --window-a and --window-b");
  return chosen;
}

}  // namespace detail

inline AnalyzeResult cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
  Stopwatch clock;
  AnalyzeResult result;
  if (o.inputs.empty()) throw UsageError("analyze needs at least one corpus file");
  if (o.bin_seconds < 1) throw UsageError("--bin-seconds must be at least 1");
  std::vector<std::string> notes;
  const auto sel = detail::resolve_selectors(o, notes);
  result.ran = sel;
  auto warn = [&](const std::string& msg) {
    err << "warning: " << msg << '\n';
    result.warnings.push_back(msg);
  };
  for (const auto& n : notes) err << "note: " << n << '\n';

  analytics::DormancyOptions dorm;
  if (o.window_a && o.window_b) {
    dorm = {*o.window_a, *o.window_b, o.min_a, o.min_b, o.max_gap};
    analytics::check_windows(dorm);
  }

  analytics::Stoplist stop = o.default_stoplist ? analytics::default_stoplist() : analytics::Stoplist{};
  for (const auto& p : o.stoplists) stop.add_file(p);
  std::optional<Partition> partition;
  if (o.partition) partition = botdetect::read_partition_csv(*o.partition);
  const auto filter = make_filter(o.campaign);

  BundleWriter w(o.out);
  analytics::EngineOptions eo;
  eo.bin_seconds = o.bin_seconds;
  eo.threads = o.exec.threads;
  eo.shards = o.exec.shards;
  auto res = analytics::run_engine(o.inputs, stop, partition ? &*partition : nullptr, filter ? &*filter : nullptr, eo);
  warn_ingest(res.ingest, err);
  if (res.all.tweets == 0) warn("the corpus holds no tweets");
  if (filter && res.campaign->tweets == 0) warn("campaign terms matched no tweets; campaign outputs are empty");

  struct Scope {
    std::string name;
    const analytics::ScopeAggregate* agg;
  };
  std::vector<Scope> scopes{{"all", &res.all}};
  if (filter) scopes.push_back({"campaign", &*res.campaign});

  Json comparisons = Json::object(), correlations = Json::object();
  for (const auto& [name, agg] : scopes) {
    const bool primary = name == "all";
    std::optional<analytics::CountMap> profile;
    auto profile_counts = [&]() -> const analytics::CountMap& {
      if (!profile) profile = analytics::profile_token_counts(agg->users, stop);
      return *profile;
    };

    if (sel.count("timeline")) {
      analytics::TimelineOptions to;
      to.by_class = partition.has_value();
      to.split_retweets = o.split_retweets;
      w.write("series/" + name + "_timeline.csv", timeline_csv(analytics::build_timeline(agg->bins, o.bin_seconds, to)));
    }
    if (sel.count("ranks")) {
      for (auto kind : analytics::kRankKinds) {
        if (kind == analytics::RankKind::language) continue;
        const auto& counts = analytics::counts_for(*agg, kind, kind == analytics::RankKind::profile_token ? &profile_counts() : nullptr);
        w.write("tables/" + name + "_" + analytics::to_string(kind) + ".csv",
                rank_csv(analytics::rank_table(counts, kind, o.top).rows));
      }
    }
    if (sel.count("languages"))
      w.write("tables/" + name + "_languages.csv",
              rank_csv(analytics::rank_table(agg->languages, analytics::RankKind::language).rows));
    if (sel.count("distributions")) {
      const auto suite = analytics::distribution_suite(*agg, profile_counts());
      for (const auto& d : suite.items) {
        const auto base = "distributions/" + name + "_" + std::string(1, d.letter) + "_" + d.name;
        w.write(base + ".csv", distribution_csv(d));
        w.write(base + "_histogram.csv", histogram_csv(d));
      }
    }
    if (sel.count("compare")) {
      try {
        comparisons[name] = to_json(analytics::compare_groups(agg->users, *partition, o.t_variant));
      } catch (const DataError& e) {
        if (primary) throw;
        comparisons[name] = {{"error", e.what()}};
        warn(name + " comparison skipped: " + e.what());
      }
    }
    if (sel.count("correlate")) {
      Json c = Json::object();
      for (auto cls : {UserClass::bot, UserClass::human}) {
        try {
          c[group_label(cls)] = to_json(analytics::feature_correlations(agg->users, *partition, cls));
        } catch (const DataError& e) {
          if (primary) throw;
          c[group_label(cls)] = {{"error", e.what()}};
          warn(name + " " + group_label(cls) + " correlations skipped: " + e.what());
        }
      }
      correlations[name] = std::move(c);
    }
    if (sel.count("deltas"))
      w.write("tables/" + name + "_follower_deltas.csv", deltas_csv(analytics::follower_deltas(*agg, *partition, o.top)));
  }
  if (sel.count("compare")) w.write("comparisons.json", dump(comparisons));
  if (sel.count("correlate")) w.write("correlations.json", dump(correlations));

  if (sel.count("dormancy")) {
    analytics::DormancyReport rep;
    std::string source;
    if (o.traces) {
      rep = analytics::detect_dormant(analytics::read_activity_traces(*o.traces), dorm);
      source = "traces";
    } else {
      rep = analytics::detect_dormant(analytics::traces_from_users(res.all.users), dorm);
      source = "corpus";
    }
    rep.creation_gap = analytics::creation_gap_candidates(res.all.users, dorm);
    w.write("dormancy.json", dump(to_json(rep, dorm, source)));
  }
  w.write("ingest.json", dump(corpus::to_json(res.ingest)));

  RunManifest m;
  m.command = "analyze";
  Json selectors = Json::array();
  for (const auto& s : analysis_selectors())
    if (sel.count(s)) selectors.push_back(s);
  m.config = {{"selectors", selectors},
              {"bin_seconds", o.bin_seconds},
              {"top", o.top},
              {"split_retweets", o.split_retweets},
              {"t_variant", o.t_variant == stats::TVariant::welch ? "welch" : "pooled"},
              {"campaign", campaign_config(filter)},
              {"default_stoplist", o.default_stoplist},
              {"stoplist_size", stop.size()}};
  if (o.window_a && o.window_b)
    m.config["dormancy"] = {{"window_a", window_string(*o.window_a)},
                            {"window_b", window_string(*o.window_b)},
                            {"min_a", o.min_a},
                            {"min_b", o.min_b},
                            {"max_gap", o.max_gap}};
  for (const auto& p : o.inputs) m.inputs.push_back(digest_input(p, "corpus"));
  if (o.partition) m.inputs.push_back(digest_input(*o.partition, "partition"));
  if (o.traces) m.inputs.push_back(digest_input(*o.traces, "traces"));
  for (const auto& p : o.stoplists) m.inputs.push_back(digest_input(p, "stoplist"));

  std::uint64_t bots = 0, humans = 0;
  if (partition)
    for (const auto& [id, e] : res.all.users.entries()) {
      auto it = partition->find(id);
      if (it == partition->end()) continue;
      ++(it->second == UserClass::bot ? bots : humans);
    }
  if (partition && bots + humans == 0) warn("the partition covers none of the corpus users");
  m.counts = {{"tweets", res.all.tweets},
              {"retweets", res.all.retweets},
              {"users", res.all.users.size()},
              {"bots", bots},
              {"humans", humans},
              {"unclassified", res.all.users.size() - bots - humans}};
  if (filter) {
    m.counts["campaign_tweets"] = res.campaign->tweets;
    m.counts["campaign_users"] = res.campaign->users.size();
  }
  m.extra["warnings"] = result.warnings;
  m.threads = res.threads_used;
  m.shards = std::max<std::size_t>(1, o.exec.shards);
  m.wall_clock_seconds = clock.seconds();
  result.manifest = write_manifest(w, m);

  out << "analyzed " << res.all.tweets << " tweets from " << res.all.users.size() << " users";
  if (filter) out << " (" << res.campaign->tweets << " in the campaign scope)";
  out << "; bundle in " << o.out.string() << "\n";
  return result;
}

// ---------------------------------------------------------------- gen-fixture

inline Json fixture_config(const FixtureOptions& f) {
  Json j;
  j["users"] = f.users;
  j["bot_fraction"] = f.bot_fraction;
  j["tweets"] = f.tweets ? Json(*f.tweets) : Json(nullptr);
  j["retweet_rate"] = f.retweet_rate;
  j["campaign_scale"] = f.campaign_scale;
  j["dormant"] = f.dormant;
  j["near_misses"] = f.near_misses;
  j["creation_gap"] = f.creation_gap;
  j["train"] = f.train;
  j["malformed"] = f.malformed;
  j["duplicates"] = f.duplicates;
  j["window"] = window_string(f.window);
  j["window_a"] = window_string(f.window_a);
  return j;
}

inline FixtureSummary cmd_gen_fixture(const FixtureOptions& f, const fs::path& dir, std::ostream& out) {
  Stopwatch clock;
  BundleWriter w(dir);
  auto summary = generate_fixture(f, dir);
  const auto files = fixture_files(dir);
  for (const auto& p : {files.corpus, files.labels, files.train, files.traces, files.dormant_truth, files.summary})
    w.adopt(p.filename().string());
  RunManifest m;
  m.command = "gen-fixture";
  m.config = fixture_config(f);
  m.seed = f.seed;
  m.counts = {{"tweets", summary.tweets},
              {"users", summary.users},
              {"bots", summary.bots},
              {"humans", summary.users - summary.bots}};
  m.wall_clock_seconds = clock.seconds();
  write_manifest(w, m);
  out << "wrote " << summary.tweets << " tweets from " << summary.users << " users (" << summary.bots << " bots) to "
      << dir.string() << "\n";
  return summary;
}

// ---------------------------------------------------------------- validate-bundle

/// True when every listed file verifies.
inline bool cmd_validate_bundle(const fs::path& dir, std::ostream& out, std::ostream& err) {
  const auto check = validate_bundle(dir);
  for (const auto& p : check.problems) err << "mismatch: " << p << '\n';
  for (const auto& u : check.unlisted) err << "note: not in manifest: " << u << '\n';
  if (check.ok()) out << "ok: " << check.files_checked << " files verified\n";
  else out << "FAILED: " << check.problems.size() << " problem(s) in " << check.files_checked << " files\n";
  return check.ok();
}

}  // namespace botlens::report
