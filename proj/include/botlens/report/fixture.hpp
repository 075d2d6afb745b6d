// SPDX-License-Identifier: Apache-2.0
// Synthetic campaign corpora with known ground truth: labels, planted
// dormant accounts and a labeled training set drawn from the same regimes.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "botlens/botdetect/io.hpp"
#include "botlens/corpus/serialize.hpp"
#include "botlens/error.hpp"
#include "botlens/random.hpp"
#include "botlens/timeutil.hpp"
#include "json.hpp"

namespace botlens::report {

/// Mean and standard deviation of one lognormal count.
struct Moment {
  double mean = 0.0;
  double sd = 0.0;
};

struct Regime {
  Moment tweets;  // tweets posted in the corpus window
  Moment statuses, followers, friends, favourites, listed;
  double p_default_profile = 0.0, p_geo = 0.0, p_background = 0.0, p_verified = 0.0, p_protected = 0.0;
  double campaign_rate = 0.0;  // share of own tweets carrying a campaign hashtag
};

// Campaign-window group statistics of bot and human accounts. Statuses
// and the binary rates are not published and are set by hand.
inline constexpr Regime kBotRegime{{2.86, 10.3},  {2000, 8000},  {1382, 22282}, {1058, 12190}, {228, 924},
                                   {7.42, 90.3},  0.70,          0.05,          0.30,          0.0,
                                   0.01,          0.55};
inline constexpr Regime kHumanRegime{{3.81, 9.68},   {15000, 40000}, {2510, 28542}, {1403, 3656}, {13774, 27001},
                                     {77.64, 560.2}, 0.20,           0.30,          0.80,         0.02,
                                     0.05,           0.12};

struct FixtureOptions {
  std::size_t users = 1000;
  double bot_fraction = 0.18;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> tweets;  // exact total; otherwise drawn per user
  double retweet_rate = 0.3;
  double campaign_scale = 1.0;  // multiplies both regimes' campaign rates
  std::size_t dormant = 0;
  std::size_t near_misses = 0;
  std::size_t creation_gap = 0;
  std::size_t train = 2000;
  std::size_t malformed = 0;
  std::size_t duplicates = 0;
  TimeWindow window{*parse_timestamp("2017-04-27T00:00:00Z"), *parse_timestamp("2017-05-08T00:00:00Z")};
  TimeWindow window_a{*parse_timestamp("2016-10-01T00:00:00Z"), *parse_timestamp("2016-11-09T00:00:00Z")};
  Regime bot = kBotRegime;
  Regime human = kHumanRegime;
};

inline const std::vector<std::string>& campaign_hashtags() {
  static const std::vector<std::string> v = {"macronleaks", "macrongate", "bayrougate"};
  return v;
}

struct FixtureFiles {
  std::filesystem::path corpus, labels, train, traces, dormant_truth, summary;
};

inline FixtureFiles fixture_files(const std::filesystem::path& dir) {
  return {dir / "corpus.ndjson", dir / "labels.csv",        dir / "train.csv",
          dir / "traces.csv",    dir / "dormant_truth.csv", dir / "fixture.json"};
}

struct FixtureSummary {
  std::uint64_t users = 0, bots = 0, tweets = 0, retweets = 0, campaign_tweets = 0, lines = 0;
  nlohmann::ordered_json json;
};

namespace detail {

/// Samples indices with weight 1 / (rank + 1)^s.
class Zipf {
 public:
  Zipf(std::size_t n, double s = 1.0) {
    cum_.reserve(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) cum_.push_back(acc += 1.0 / std::pow(static_cast<double>(i + 1), s));
  }
  std::size_t operator()(Rng& rng) const {
    auto it = std::upper_bound(cum_.begin(), cum_.end(), rng.uniform() * cum_.back());
    return std::min<std::size_t>(static_cast<std::size_t>(it - cum_.begin()), cum_.size() - 1);
  }

 private:
  std::vector<double> cum_;
};

// Stochastic rounding keeps the expectation of the continuous draw.
inline std::uint64_t count_draw(Rng& rng, Moment m) {
  if (m.mean <= 0.0) return 0;
  const double x = m.sd > 0.0 ? rng.lognormal_mean_sd(m.mean, m.sd) : m.mean;
  const double f = std::floor(x);
  return static_cast<std::uint64_t>(f) + (rng.uniform() < x - f ? 1 : 0);
}

inline Timestamp uniform_time(Rng& rng, const TimeWindow& w) {
  const auto span = to_epoch(w.end) - to_epoch(w.begin);
  return from_epoch(to_epoch(w.begin) + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(span))));
}

inline const std::vector<std::string>& words_en() {
  static const std::vector<std::string> v = {
      "the",    "election", "vote",    "france", "president", "news",   "leaked",  "emails",  "campaign", "media",
      "and",    "debate",   "people",  "hack",   "breaking",  "fake",   "truth",   "paris",   "macron",   "lepen",
      "of",     "documents", "russia", "world",  "today",     "report", "sources", "voters",  "europe",   "live",
      "to",     "scandal",  "leak",    "share",  "watch",     "story",  "support", "finance", "offshore", "account"};
  return v;
}

inline const std::vector<std::string>& words_fr() {
  static const std::vector<std::string> v = {
      "le",       "élection",  "vote",     "france",  "président", "la",      "débat",  "candidat", "peuple", "et",
      "macron",   "marine",    "fuite",    "courriels", "médias",  "pays",    "patrie", "soutien",  "second", "tour",
      "de",       "dimanche",  "résultats", "électeurs", "gauche", "droite",  "vérité", "scandale", "était",  "république",
      "l'équipe", "d'emmanuel", "campagne", "documents", "urgent", "partagez", "europe", "emploi",  "sécurité", "avenir"};
  return v;
}

inline const std::vector<std::string>& bio_words() {
  static const std::vector<std::string> v = {
      "patriote", "français", "journaliste", "politique", "citoyen", "libre",   "nation",  "souveraineté",
      "student",  "music",    "father",      "mother",    "news",    "tech",    "football", "engineer",
      "fan",      "love",     "writer",      "europe",    "america", "freedom", "truth",   "conservative",
      "paris",    "lyon",     "marseille",   "maga",      "réveil",  "famille", "photo",   "cinéma"};
  return v;
}

inline const std::vector<std::string>& general_hashtags() {
  static const std::vector<std::string> v = {
      "presidentielle2017", "france2017", "macron", "lepen",  "marine2017", "enmarche", "jevote",
      "frenchelection",     "debat2017",  "paris",  "europe", "breaking",   "news",     "politique"};
  return v;
}

inline const std::vector<std::string>& url_domains() {
  static const std::vector<std::string> v = {"lemonde.fr", "lefigaro.fr", "twitter.com",   "youtube.com",
                                             "pastebin.com", "archive.org", "bfmtv.com", "rt.com",
                                             "breitbart.com", "4chan.org",  "liberation.fr", "sputniknews.com"};
  return v;
}

inline constexpr const char* kSyllables[] = {"ma", "ri", "lo", "pe", "su", "ka", "ne", "vo", "tu", "li",
                                             "ro", "da", "mi", "zo", "be", "fa", "no", "sa", "te", "xi"};

struct UserPlan {
  std::string id;
  std::string screen_name;
  std::string description;
  bool bot = false;
  std::uint64_t tweets = 1;
  bool fixed_tweets = false;  // dormancy plants whose B count is part of the construction
  std::uint64_t statuses = 0, followers = 0, friends = 0, favourites = 0, listed = 0;
  std::uint64_t follower_growth = 0;
  bool default_profile = false, geo = false, background = false, verified = false, is_protected = false;
  Timestamp created{};
  std::string plant;  // "", dormant, near_miss_a, near_miss_gap, near_miss_b, creation_gap
  std::uint64_t events_a = 0, events_gap = 0;
};

struct SourceTweet {
  std::string id;
  std::size_t author = 0;
  std::string text;
  std::vector<std::string> hashtags, mentions, urls;
  std::string lang;
};

inline nlohmann::ordered_json regime_json(const Regime& r) {
  auto m = [](Moment x) { return nlohmann::ordered_json{{"mean", x.mean}, {"sd", x.sd}}; };
  return {{"tweets", m(r.tweets)},
          {"statuses_count", m(r.statuses)},
          {"followers_count", m(r.followers)},
          {"friends_count", m(r.friends)},
          {"favourites_count", m(r.favourites)},
          {"listed_count", m(r.listed)},
          {"p_default_profile", r.p_default_profile},
          {"p_geo_enabled", r.p_geo},
          {"p_profile_use_background_image", r.p_background},
          {"p_verified", r.p_verified},
          {"p_protected", r.p_protected},
          {"campaign_rate", r.campaign_rate}};
}

/// Requested vs realized mean per count, with z in units of the requested
/// standard error.
inline nlohmann::ordered_json self_check(const std::vector<UserPlan>& users, bool bots, const Regime& r,
                                         bool tweets_drawn) {
  struct Col {
    const char* name;
    Moment want;
    std::uint64_t UserPlan::*slot;
  };
  const Col cols[] = {{"tweets", r.tweets, &UserPlan::tweets},
                      {"statuses_count", r.statuses, &UserPlan::statuses},
                      {"followers_count", r.followers, &UserPlan::followers},
                      {"friends_count", r.friends, &UserPlan::friends},
                      {"favourites_count", r.favourites, &UserPlan::favourites},
                      {"listed_count", r.listed, &UserPlan::listed}};
  auto out = nlohmann::ordered_json::array();
  for (const auto& c : cols) {
    if (c.slot == &UserPlan::tweets && !tweets_drawn) continue;
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& u : users) {
      // plants have hand-set tweet counts
      if (u.bot != bots || (c.slot == &UserPlan::tweets && (u.fixed_tweets || !u.plant.empty()))) continue;
      sum += static_cast<double>(u.*c.slot);
      ++n;
    }
    nlohmann::ordered_json row{{"feature", c.name}, {"n", n}, {"requested_mean", c.want.mean}};
    if (n > 0) {
      const double mean = sum / static_cast<double>(n);
      const double se = c.want.sd / std::sqrt(static_cast<double>(n));
      row["realized_mean"] = mean;
      row["standard_error"] = se;
      row["z"] = se > 0.0 ? (mean - c.want.mean) / se : 0.0;
      row["within_3se"] = se > 0.0 ? std::abs(mean - c.want.mean) <= 3.0 * se : mean == c.want.mean;
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

/// Writes corpus.ndjson, labels.csv, train.csv, traces.csv,
/// dormant_truth.csv and fixture.json into `dir`. Identical options give
/// identical bytes.
inline FixtureSummary generate_fixture(const FixtureOptions& o, const std::filesystem::path& dir) {
  using namespace detail;
  if (o.users == 0) throw UsageError("fixture needs at least one user");
  if (!(o.bot_fraction >= 0.0 && o.bot_fraction <= 1.0)) throw UsageError("bot fraction must lie in [0, 1]");
  if (!(o.retweet_rate >= 0.0 && o.retweet_rate < 1.0)) throw UsageError("retweet rate must lie in [0, 1)");
  if (!(o.campaign_scale >= 0.0)) throw UsageError("campaign scale must be nonnegative");
  if (!o.window.valid() || !o.window_a.valid() || o.window.begin < o.window_a.end)
    throw UsageError("fixture windows must be valid with window A before the corpus window");
  if (o.dormant + o.near_misses + o.creation_gap > o.users)
    throw UsageError("more dormancy plants than users");

  Rng rng_users(o.seed);
  Rng rng_tweets(o.seed ^ 0x9e3779b97f4a7c15ULL);
  Rng rng_train(o.seed ^ 0xc2b2ae3d27d4eb4fULL);
  Rng rng_traces(o.seed ^ 0x165667b19e3779f9ULL);

  const auto n_bots = static_cast<std::size_t>(std::llround(static_cast<double>(o.users) * o.bot_fraction));
  std::vector<char> is_bot(o.users, 0);
  std::fill(is_bot.begin(), is_bot.begin() + static_cast<std::ptrdiff_t>(n_bots), 1);
  rng_users.shuffle(is_bot);

  const auto early = *parse_timestamp("2008-01-01T00:00:00Z");
  const auto late = *parse_timestamp("2016-09-01T00:00:00Z");
  std::vector<UserPlan> users(o.users);
  for (std::size_t i = 0; i < o.users; ++i) {
    auto& u = users[i];
    u.id = std::to_string(700000000 + i);
    for (auto k = 2 + rng_users.below(2); k > 0; --k) u.screen_name += kSyllables[rng_users.below(std::size(kSyllables))];
    u.screen_name += std::to_string(i);
    u.bot = is_bot[i];
    const Regime& r = u.bot ? o.bot : o.human;
    // every corpus user has at least one tweet; the excess over one is drawn
    u.tweets = 1 + count_draw(rng_users, {r.tweets.mean - 1.0, r.tweets.sd});
    u.statuses = count_draw(rng_users, r.statuses);
    u.followers = count_draw(rng_users, r.followers);
    u.friends = count_draw(rng_users, r.friends);
    u.favourites = count_draw(rng_users, r.favourites);
    u.listed = count_draw(rng_users, r.listed);
    u.default_profile = rng_users.bernoulli(r.p_default_profile);
    u.geo = rng_users.bernoulli(r.p_geo);
    u.background = rng_users.bernoulli(r.p_background);
    u.verified = rng_users.bernoulli(r.p_verified);
    u.is_protected = rng_users.bernoulli(r.p_protected);
    if (u.bot && rng_users.bernoulli(0.1)) u.follower_growth = count_draw(rng_users, {3000, 5000});
    else u.follower_growth = rng_users.below(1 + u.followers / 50);
    u.created = uniform_time(rng_users, {early, late});
    for (auto k = 2 + rng_users.below(6); k > 0; --k) {
      if (!u.description.empty()) u.description += ' ';
      u.description += bio_words()[rng_users.below(bio_words().size())];
    }
  }

  // Dormancy plants: dormant accounts come from the bots first.
  {
    std::vector<std::size_t> order(o.users);
    for (std::size_t i = 0; i < o.users; ++i) order[i] = i;
    rng_users.shuffle(order);
    std::stable_partition(order.begin(), order.end(), [&](std::size_t i) { return users[i].bot; });
    std::size_t next = 0;
    for (std::size_t k = 0; k < o.dormant; ++k) {
      auto& u = users[order[next++]];
      u.plant = "dormant";
      u.events_a = 5 + rng_users.below(11);
      u.events_gap = rng_users.below(2);
      u.tweets = std::max<std::uint64_t>(u.tweets, 6);
    }
    for (std::size_t k = 0; k < o.creation_gap; ++k) {
      auto& u = users[order[next++]];
      u.plant = "creation_gap";
      u.created = uniform_time(rng_users, o.window_a);
    }
    // Each near miss fails exactly one of the three thresholds.
    for (std::size_t k = 0; k < o.near_misses; ++k) {
      auto& u = users[order[next++]];
      switch (k % 3) {
        case 0:
          u.plant = "near_miss_a";
          u.events_a = 4;
          u.tweets = std::max<std::uint64_t>(u.tweets, 6);
          break;
        case 1:
          u.plant = "near_miss_gap";
          u.events_a = 10;
          u.events_gap = 2;
          u.tweets = std::max<std::uint64_t>(u.tweets, 6);
          break;
        default:
          u.plant = "near_miss_b";
          u.events_a = 10;
          u.tweets = 4;
          u.fixed_tweets = true;
          break;
      }
    }
  }

  if (o.tweets) {
    std::uint64_t base = 0;
    for (auto& u : users) base += u.plant.empty() ? 1 : u.tweets;
    if (*o.tweets < base)
      throw UsageError("tweet total " + std::to_string(*o.tweets) + " is below the minimum " + std::to_string(base));
    std::vector<double> cum;
    std::vector<std::size_t> eligible;
    double acc = 0.0;
    for (std::size_t i = 0; i < o.users; ++i) {
      if (users[i].fixed_tweets) continue;
      eligible.push_back(i);
      cum.push_back(acc += static_cast<double>(users[i].tweets));
    }
    for (auto& u : users)
      if (u.plant.empty()) u.tweets = 1;
    if (eligible.empty() && *o.tweets > base) throw UsageError("no user can take the requested tweets");
    for (std::uint64_t extra = *o.tweets - base; extra > 0; --extra) {
      auto it = std::upper_bound(cum.begin(), cum.end(), rng_users.uniform() * acc);
      auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), eligible.size() - 1);
      ++users[eligible[idx]].tweets;
    }
  }

  std::filesystem::create_directories(dir);
  const auto files = fixture_files(dir);
  FixtureSummary summary;
  summary.users = o.users;
  summary.bots = n_bots;

  // Tweet slots in a shuffled author order.
  std::vector<std::uint32_t> slots;
  for (std::size_t i = 0; i < o.users; ++i)
    slots.insert(slots.end(), users[i].tweets, static_cast<std::uint32_t>(i));
  rng_tweets.shuffle(slots);
  summary.tweets = slots.size();

  std::vector<std::size_t> dup_at, bad_at;
  for (std::size_t k = 0; k < o.duplicates && !slots.empty(); ++k) dup_at.push_back(rng_tweets.below(slots.size()));
  for (std::size_t k = 0; k < o.malformed; ++k) bad_at.push_back(rng_tweets.below(slots.size() + 1));
  std::sort(dup_at.begin(), dup_at.end());
  std::sort(bad_at.begin(), bad_at.end());

  const Zipf zipf_en(words_en().size()), zipf_fr(words_fr().size()), zipf_tags(general_hashtags().size()),
      zipf_users(o.users, 0.9), zipf_domains(url_domains().size());
  static const char* kLangs[] = {"en", "fr", "und", "es", "de", "it"};
  static const double kLangCum[] = {0.45, 0.85, 0.90, 0.94, 0.97, 1.0};
  const auto leak = *parse_timestamp("2017-05-05T18:49:00Z");

  std::vector<std::pair<std::size_t, std::int64_t>> activity;  // (user, epoch) of every corpus tweet
  activity.reserve(slots.size());
  std::vector<SourceTweet> ring;
  constexpr std::size_t kRing = 4096;
  ring.reserve(kRing);

  std::ofstream corpus_out(files.corpus, std::ios::binary);
  if (!corpus_out) throw DataError("cannot write " + files.corpus.string());
  std::size_t dup_i = 0, bad_i = 0;
  auto emit_bad = [&](std::size_t pos) {
    while (bad_i < bad_at.size() && bad_at[bad_i] == pos) {
      corpus_out << "{\"id\": \"broken" << bad_i << "\", \"created_at\": \n";
      ++bad_i;
      ++summary.lines;
    }
  };

  const auto span = static_cast<double>(to_epoch(o.window.end) - to_epoch(o.window.begin));
  for (std::size_t s = 0; s < slots.size(); ++s) {
    emit_bad(s);
    Rng& g = rng_tweets;
    const auto ui = slots[s];
    const UserPlan& u = users[ui];
    const Regime& r = u.bot ? o.bot : o.human;
    corpus::TweetRecord rec;
    rec.tweet_id = std::to_string(858000000000000000ULL + s);

    const bool retweet = !ring.empty() && g.bernoulli(o.retweet_rate);
    bool campaign = false;
    if (retweet) {
      const SourceTweet& src = ring[g.below(ring.size())];
      const UserPlan& au = users[src.author];
      rec.text = "RT @" + au.screen_name + ": " + src.text;
      rec.hashtags = src.hashtags;
      rec.mentions = src.mentions;
      rec.mentions.insert(rec.mentions.begin(), text::to_lower(au.screen_name));
      rec.urls = src.urls;
      rec.lang = src.lang;
      rec.retweeted_user_id = au.id;
      rec.retweeted_tweet_id = src.id;
      for (const auto& h : rec.hashtags)
        campaign |= std::find(campaign_hashtags().begin(), campaign_hashtags().end(), h) != campaign_hashtags().end();
      ++summary.retweets;
    } else {
      const double lu = g.uniform();
      std::size_t li = 0;
      while (lu >= kLangCum[li]) ++li;
      rec.lang = kLangs[li];
      const bool fr = rec.lang == std::string_view("fr");
      for (auto k = 4 + g.below(9); k > 0; --k) {
        if (!rec.text.empty()) rec.text += ' ';
        rec.text += fr ? words_fr()[zipf_fr(g)] : words_en()[zipf_en(g)];
      }
      campaign = g.bernoulli(std::min(1.0, r.campaign_rate * o.campaign_scale));
      if (campaign) {
        const double c = g.uniform();
        rec.hashtags.push_back(campaign_hashtags()[c < 0.7 ? 0 : c < 0.9 ? 1 : 2]);
      }
      for (auto k = g.below(3); k > 0; --k) rec.hashtags.push_back(general_hashtags()[zipf_tags(g)]);
      for (auto k = g.below(3) == 0 ? 1 : 0; k > 0; --k)
        rec.mentions.push_back(text::to_lower(users[zipf_users(g)].screen_name));
      if (g.bernoulli(0.25))
        rec.urls.push_back("https://" + url_domains()[zipf_domains(g)] + "/p/" + std::to_string(g.below(40)));
      for (const auto& h : rec.hashtags) rec.text += " #" + h;
      for (const auto& m : rec.mentions) rec.text += " @" + m;
      for (const auto& l : rec.urls) rec.text += " " + l;
    }

    if (campaign && leak < o.window.end) {
      // campaign traffic decays after the leak
      const auto tail = static_cast<double>(to_epoch(o.window.end) - to_epoch(std::max(leak, o.window.begin)));
      double dt;
      do dt = -std::log(1.0 - g.uniform()) * 20 * 3600.0;
      while (dt >= tail);
      rec.created_at = from_epoch(to_epoch(std::max(leak, o.window.begin)) + static_cast<std::int64_t>(dt));
      ++summary.campaign_tweets;
    } else {
      rec.created_at = uniform_time(g, o.window);
      summary.campaign_tweets += campaign;
    }

    // Snapshot as of this tweet: counts approach the user's drawn values
    // toward the end of the window.
    const double phi = (static_cast<double>(to_epoch(rec.created_at) - to_epoch(o.window.begin))) / span;
    auto behind = [&](std::uint64_t v, double amount) {
      const auto d = static_cast<std::uint64_t>(std::llround(amount * (1.0 - phi)));
      return v > d ? v - d : 0;
    };
    auto& snap = rec.user;
    snap.user_id = u.id;
    snap.screen_name = u.screen_name;
    snap.description = u.description;
    snap.created_at_account = u.created;
    snap.statuses_count = behind(u.statuses, static_cast<double>(u.tweets));
    snap.followers_count = behind(u.followers, static_cast<double>(u.follower_growth));
    snap.friends_count = u.friends;
    snap.favourites_count = u.favourites;
    snap.listed_count = u.listed;
    snap.default_profile = u.default_profile;
    snap.geo_enabled = u.geo;
    snap.profile_use_background_image = u.background;
    snap.verified = u.verified;
    snap.is_protected = u.is_protected;
    snap.observed_at = rec.created_at;

    const auto line = corpus::to_line(rec);
    corpus_out << line << '\n';
    ++summary.lines;
    while (dup_i < dup_at.size() && dup_at[dup_i] == s) {
      corpus_out << line << '\n';
      ++dup_i;
      ++summary.lines;
    }
    activity.emplace_back(ui, to_epoch(rec.created_at));

    if (!retweet) {
      SourceTweet src{rec.tweet_id, ui, rec.text, rec.hashtags, rec.mentions, rec.urls, rec.lang};
      if (ring.size() < kRing) ring.push_back(std::move(src));
      else ring[g.below(kRing)] = std::move(src);
    }
  }
  emit_bad(slots.size());
  corpus_out.close();
  if (!corpus_out) throw DataError("failed writing " + files.corpus.string());

  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw DataError("cannot write " + p.string());
    return f;
  };

  {
    auto f = open(files.labels);
    f << "user_id,label\n";
    for (const auto& u : users) f << u.id << ',' << (u.bot ? "bot" : "human") << '\n';
  }

  {
    // Window A and gap events for the plants, then every corpus tweet.
    const TimeWindow gap{o.window_a.end, o.window.begin};
    for (std::size_t i = 0; i < o.users; ++i) {
      for (auto k = users[i].events_a; k > 0; --k) activity.emplace_back(i, to_epoch(uniform_time(rng_traces, o.window_a)));
      if (gap.valid())
        for (auto k = users[i].events_gap; k > 0; --k) activity.emplace_back(i, to_epoch(uniform_time(rng_traces, gap)));
    }
    std::sort(activity.begin(), activity.end());
    auto f = open(files.traces);
    f << "user_id,timestamp\n";
    for (const auto& [ui, t] : activity) f << users[ui].id << ',' << format_utc(from_epoch(t)) << '\n';
  }

  {
    auto f = open(files.dormant_truth);
    f << "user_id,kind\n";
    for (const auto& u : users)
      if (!u.plant.empty()) f << u.id << ',' << u.plant << '\n';
  }

  {
    auto f = open(files.train);
    f << botdetect::kTrainingHeader << '\n';
    const auto train_bots = static_cast<std::size_t>(std::llround(static_cast<double>(o.train) * o.bot_fraction));
    std::vector<botdetect::LabeledExample> ex(o.train);
    for (std::size_t i = 0; i < o.train; ++i) {
      auto& e = ex[i];
      e.label = i < train_bots ? 1 : 0;
      const Regime& r = e.label ? o.bot : o.human;
      auto& v = e.features.values;
      v[0] = static_cast<double>(count_draw(rng_train, r.statuses));
      v[1] = static_cast<double>(count_draw(rng_train, r.followers));
      v[2] = static_cast<double>(count_draw(rng_train, r.friends));
      v[3] = static_cast<double>(count_draw(rng_train, r.favourites));
      v[4] = static_cast<double>(count_draw(rng_train, r.listed));
      v[5] = rng_train.bernoulli(r.p_default_profile);
      v[6] = rng_train.bernoulli(r.p_geo);
      v[7] = rng_train.bernoulli(r.p_background);
      v[8] = rng_train.bernoulli(r.p_verified);
      v[9] = rng_train.bernoulli(r.p_protected);
    }
    rng_train.shuffle(ex);
    for (const auto& e : ex) f << botdetect::training_csv_row(e) << '\n';
  }

  auto& j = summary.json;
  j["seed"] = o.seed;
  j["users"] = summary.users;
  j["bots"] = summary.bots;
  j["humans"] = summary.users - summary.bots;
  j["bot_fraction"] = o.bot_fraction;
  j["tweets"] = summary.tweets;
  j["retweets"] = summary.retweets;
  j["campaign_tweets"] = summary.campaign_tweets;
  j["lines"] = summary.lines;
  j["malformed_lines"] = bad_at.size();
  j["duplicate_lines"] = dup_at.size();
  j["retweet_rate"] = o.retweet_rate;
  j["campaign_hashtags"] = campaign_hashtags();
  j["window"] = format_utc(o.window.begin) + "/" + format_utc(o.window.end);
  j["window_a"] = format_utc(o.window_a.begin) + "/" + format_utc(o.window_a.end);
  j["plants"] = {{"dormant", o.dormant}, {"near_misses", o.near_misses}, {"creation_gap", o.creation_gap}};
  j["train_examples"] = o.train;
  j["regimes"] = {{"bot", regime_json(o.bot)}, {"human", regime_json(o.human)}};
  j["self_check"] = {{"bot", self_check(users, true, o.bot, !o.tweets)},
                      {"human", self_check(users, false, o.human, !o.tweets)}};
  {
    auto f = open(files.summary);
    f << j.dump(2) << '\n';
  }
  return summary;
}

}  // namespace botlens::report
