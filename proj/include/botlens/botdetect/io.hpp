// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "botlens/botdetect/features.hpp"
#include "botlens/botdetect/logreg.hpp"
#include "botlens/botdetect/population.hpp"
#include "botlens/csv.hpp"
#include "botlens/error.hpp"
#include "json.hpp"

namespace botlens::botdetect {

inline constexpr std::string_view kTrainingHeader =
    "label,statuses_count,followers_count,friends_count,favourites_count,listed_count,default_profile,"
    "geo_enabled,profile_use_background_image,verified,protected";

inline constexpr std::string_view kModelFormat = "botlens-logreg/1";

inline std::vector<LabeledExample> parse_training_csv(std::istream& in, const std::string& name = "<training>") {
  std::string line;
  if (!std::getline(in, line)) throw DataError(name + ": empty training file");
  if (csv::trim(line) != kTrainingHeader) throw DataError(name + ": unexpected header, want " + std::string(kTrainingHeader));
  std::vector<LabeledExample> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split(line);
    auto where = [&] { return name + ":" + std::to_string(line_no) + ": "; };
    if (fields.size() != kFeatureCount + 1) throw DataError(where() + "expected 11 fields");
    LabeledExample ex;
    ex.source_id = name + ":" + std::to_string(line_no);
    auto label = csv::trim(fields[0]);
    if (label != "0" && label != "1") throw DataError(where() + "label must be 0 or 1");
    ex.label = label == "1" ? 1 : 0;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      auto f = csv::trim(fields[i + 1]);
      char* end = nullptr;
      double v = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size() || !std::isfinite(v) || v < 0.0)
        throw DataError(where() + "bad value for " + std::string(kFeatureNames[i]));
      if (i >= kCountFeatureCount && v != 0.0 && v != 1.0)
        throw DataError(where() + std::string(kFeatureNames[i]) + " must be 0 or 1");
      ex.features[i] = v;
    }
    out.push_back(std::move(ex));
  }
  return out;
}

inline std::vector<LabeledExample> read_training_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  return parse_training_csv(in, path.string());
}

inline std::string training_csv_row(const LabeledExample& e) {
  std::string row = std::to_string(e.label);
  for (double v : e.features.values) {
    row += ',';
    row += csv::num(v);
  }
  return row;
}

inline nlohmann::ordered_json to_json(const CVReport& r) {
  nlohmann::ordered_json j;
  j["seed"] = r.seed;
  j["k"] = r.folds.size();
  auto folds = nlohmann::ordered_json::array();
  for (const auto& f : r.folds)
    folds.push_back({{"accuracy", f.accuracy}, {"auc", f.auc}, {"n_train", f.n_train}, {"n_test", f.n_test}});
  j["folds"] = std::move(folds);
  j["mean_accuracy"] = r.mean_accuracy;
  j["mean_auc"] = r.mean_auc;
  return j;
}

inline CVReport cv_report_from_json(const nlohmann::json& j) {
  CVReport r;
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& f : j.at("folds"))
    r.folds.push_back({f.at("accuracy").get<double>(), f.at("auc").get<double>(), f.at("n_train").get<std::size_t>(),
                       f.at("n_test").get<std::size_t>()});
  r.mean_accuracy = j.at("mean_accuracy").get<double>();
  r.mean_auc = j.at("mean_auc").get<double>();
  return r;
}

inline nlohmann::ordered_json to_json(const Model& m) {
  nlohmann::ordered_json j;
  j["format"] = kModelFormat;
  j["features"] = std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());
  auto scaler = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < kCountFeatureCount; ++i)
    scaler.push_back({{"feature", kFeatureNames[i]}, {"transform", "log1p"}, {"mean", m.scaler.mean[i]}, {"sd", m.scaler.sd[i]}});
  j["scaler"] = std::move(scaler);
  j["weights"] = m.weights;
  j["bias"] = m.bias;
  j["threshold"] = m.threshold;
  const auto& mf = m.manifest;
  nlohmann::ordered_json man;
  man["data_hash"] = mf.data_hash;
  man["seed"] = mf.seed;
  man["hyperparameters"] = {{"l2", mf.hyper.l2}, {"max_iters", mf.hyper.max_iters}, {"tol", mf.hyper.tol},
                            {"solver", "gradient_descent_backtracking"}};
  man["n_examples"] = mf.n_examples;
  man["n_bots"] = mf.n_bots;
  man["iterations"] = mf.iterations;
  man["final_loss"] = mf.final_loss;
  if (mf.cv) man["cross_validation"] = to_json(*mf.cv);
  j["manifest"] = std::move(man);
  return j;
}

inline Model model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kModelFormat) throw DataError("unsupported model format");
    Model m;
    const auto& scaler = j.at("scaler");
    if (scaler.size() != kCountFeatureCount) throw DataError("model scaler must list 5 count features");
    for (std::size_t i = 0; i < kCountFeatureCount; ++i) {
      m.scaler.mean[i] = scaler[i].at("mean").get<double>();
      m.scaler.sd[i] = scaler[i].at("sd").get<double>();
      if (!(m.scaler.sd[i] > 0.0)) throw DataError("model scaler sd must be positive");
    }
    const auto& w = j.at("weights");
    if (w.size() != kFeatureCount) throw DataError("model must have 10 weights");
    for (std::size_t i = 0; i < kFeatureCount; ++i) m.weights[i] = w[i].get<double>();
    m.bias = j.at("bias").get<double>();
    m.threshold = j.at("threshold").get<double>();
    if (!(m.threshold > 0.0 && m.threshold < 1.0)) throw DataError("model threshold must lie in (0, 1)");
    for (double v : m.weights)
      if (!std::isfinite(v)) throw DataError("model weights must be finite");
    const auto& man = j.at("manifest");
    m.manifest.data_hash = man.at("data_hash").get<std::string>();
    m.manifest.seed = man.at("seed").get<std::uint64_t>();
    const auto& hp = man.at("hyperparameters");
    m.manifest.hyper = {hp.at("l2").get<double>(), hp.at("max_iters").get<int>(), hp.at("tol").get<double>(),
                        m.manifest.seed};
    m.manifest.n_examples = man.at("n_examples").get<std::size_t>();
    m.manifest.n_bots = man.at("n_bots").get<std::size_t>();
    m.manifest.iterations = man.at("iterations").get<int>();
    m.manifest.final_loss = man.at("final_loss").get<double>();
    if (man.contains("cross_validation")) m.manifest.cv = cv_report_from_json(man.at("cross_validation"));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model: ") + e.what());
  }
}

inline Model read_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

inline constexpr std::string_view kPopulationHeader = "user_id,probability,label,complete";

inline void write_population_csv(std::ostream& out, const Population& pop) {
  out << kPopulationHeader << '\n';
  for (const auto& e : pop.entries)
    out << csv::escape(e.user_id) << ',' << csv::num(e.probability) << ',' << to_string(e.label) << ','
        << (e.complete ? 1 : 0) << '\n';
}

/// Reads `user_id,...,label,...` with label as bot/human or 1/0. Any CSV
/// with `user_id` and `label` columns works, so hand-made partitions are
/// accepted too.
inline Partition read_partition_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": empty partition file");
  auto header = csv::split(csv::trim(line));
  std::size_t id_col = header.size(), label_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "user_id") id_col = i;
    if (header[i] == "label") label_col = i;
  }
  if (id_col == header.size() || label_col == header.size())
    throw DataError(path.string() + ": partition needs user_id and label columns");
  Partition p;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    auto f = csv::split(csv::trim(line));
    if (f.size() <= std::max(id_col, label_col))
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": too few fields");
    const auto& l = f[label_col];
    UserClass c;
    if (l == "bot" || l == "1") c = UserClass::bot;
    else if (l == "human" || l == "0") c = UserClass::human;
    else throw DataError(path.string() + ":" + std::to_string(line_no) + ": label must be bot/human or 1/0");
    p[f[id_col]] = c;
  }
  return p;
}

}  // namespace botlens::botdetect
