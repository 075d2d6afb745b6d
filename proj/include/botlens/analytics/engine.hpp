// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <deque>
#include <filesystem>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "botlens/analytics/aggregate.hpp"
#include "botlens/corpus/filter.hpp"
#include "botlens/corpus/reader.hpp"
#include "botlens/error.hpp"
#include "botlens/thread_pool.hpp"

namespace botlens::analytics {

struct EngineOptions {
  std::int64_t bin_seconds = 60;
  std::size_t threads = 1;  // 0 = hardware threads
  std::size_t shards = 1;
  std::size_t batch_lines = 4096;
};

struct EngineResult {
  corpus::IngestReport ingest;
  ScopeAggregate all;
  std::optional<ScopeAggregate> campaign;
  std::size_t threads_used = 1;
};

namespace detail {

struct LineBatch {
  std::string file;
  std::string bytes;
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // offset, length
  std::vector<std::size_t> line_numbers;
};

struct ParsedBatch {
  std::string file;
  std::vector<corpus::ParseResult> results;
};

inline ParsedBatch parse_batch(const LineBatch& b) {
  ParsedBatch out;
  out.file = b.file;
  out.results.reserve(b.spans.size());
  for (std::size_t i = 0; i < b.spans.size(); ++i)
    out.results.push_back(
        corpus::parse_record(std::string_view(b.bytes).substr(b.spans[i].first, b.spans[i].second), b.line_numbers[i]));
  return out;
}

struct Shard {
  std::mutex mu;
  ScopeAggregate all;
  ScopeAggregate campaign;
};

}  // namespace detail

/// Streams `paths` once and accumulates the "all" scope and, with a
/// campaign filter, the campaign scope.
///
/// The main thread reads line batches. Workers parse them; the main thread
/// then drops duplicate ids in file order (first occurrence wins) and hands
/// batch i to shard i % shards for accumulation. Shards are merged once the
/// input is exhausted. Every aggregate merges commutatively, so the result
/// does not depend on thread or shard count.
inline EngineResult run_engine(const std::vector<std::filesystem::path>& paths, const Stoplist& stop,
                               const Partition* partition, const corpus::CampaignFilter* campaign,
                               const EngineOptions& opts = {}) {
  if (opts.bin_seconds < 1) throw UsageError("bin width must be at least 1 second");
  const std::size_t n_shards = std::max<std::size_t>(1, opts.shards);
  const std::size_t n_threads = resolve_threads(opts.threads);
  const std::size_t batch_lines = std::max<std::size_t>(1, opts.batch_lines);

  EngineResult res;
  res.threads_used = n_threads;
  std::vector<std::unique_ptr<detail::Shard>> shards;
  for (std::size_t i = 0; i < n_shards; ++i) shards.push_back(std::make_unique<detail::Shard>());

  corpus::DedupSet seen;
  std::size_t seq = 0;

  auto accumulate = [&](std::vector<corpus::TweetRecord> records, std::size_t shard_index) {
    auto& s = *shards[shard_index];
    std::lock_guard lock(s.mu);
    for (const auto& r : records) {
      const auto author = author_of(partition, r.user.user_id);
      s.all.add(r, author, stop, opts.bin_seconds);
      if (campaign && campaign->matches(r)) s.campaign.add(r, author, stop, opts.bin_seconds);
    }
  };

  // In-order step: failures, dedup, then the records that survive.
  auto settle = [&](detail::ParsedBatch&& pb) {
    std::vector<corpus::TweetRecord> keep;
    keep.reserve(pb.results.size());
    for (auto& result : pb.results) {
      if (auto* failure = std::get_if<corpus::ParseFailure>(&result)) {
        res.ingest.record_failure(pb.file, std::move(*failure));
        continue;
      }
      auto& rec = std::get<corpus::TweetRecord>(result);
      if (!seen.insert(rec.tweet_id)) {
        ++res.ingest.duplicate_ids;
        continue;
      }
      ++res.ingest.parsed;
      keep.push_back(std::move(rec));
    }
    return keep;
  };

  std::unique_ptr<ThreadPool> pool;
  if (n_threads > 1) pool = std::make_unique<ThreadPool>(n_threads);
  std::deque<std::future<detail::ParsedBatch>> parsing;
  std::deque<std::future<void>> accumulating;
  const std::size_t max_in_flight = 2 * n_threads;

  auto drain_one_parse = [&] {
    auto pb = parsing.front().get();
    parsing.pop_front();
    auto keep = settle(std::move(pb));
    const std::size_t shard_index = seq++ % n_shards;
    accumulating.push_back(pool->submit(
        [&, recs = std::move(keep), shard_index]() mutable { accumulate(std::move(recs), shard_index); }));
    while (accumulating.size() > max_in_flight) {
      accumulating.front().get();
      accumulating.pop_front();
    }
  };

  auto dispatch = [&](detail::LineBatch&& b) {
    if (b.spans.empty()) return;
    if (!pool) {
      auto keep = settle(detail::parse_batch(b));
      accumulate(std::move(keep), seq++ % n_shards);
      return;
    }
    parsing.push_back(pool->submit([batch = std::move(b)] { return detail::parse_batch(batch); }));
    while (parsing.size() > max_in_flight) drain_one_parse();
  };

  try {
    for (const auto& path : paths) {
      corpus::LineReader reader(path);
      if (reader.gzip()) res.ingest.gzip_files.push_back(path.string());
      detail::LineBatch batch;
      batch.file = path.string();
      std::string_view line;
      std::size_t line_no = 0;
      while (reader.next(line)) {
        ++line_no;
        res.ingest.bytes += line.size() + 1;
        if (line.find_first_not_of(" \t") == std::string_view::npos) {
          ++res.ingest.blank_lines;
          continue;
        }
        ++res.ingest.lines;
        batch.spans.emplace_back(batch.bytes.size(), line.size());
        batch.line_numbers.push_back(line_no);
        batch.bytes.append(line);
        if (batch.spans.size() >= batch_lines) {
          dispatch(std::move(batch));
          batch = detail::LineBatch{};
          batch.file = path.string();
        }
      }
      dispatch(std::move(batch));
    }
    while (!parsing.empty()) drain_one_parse();
    while (!accumulating.empty()) {
      accumulating.front().get();
      accumulating.pop_front();
    }
  } catch (...) {
    // let in-flight work finish before the shards go away
    for (auto& f : parsing)
      if (f.valid()) f.wait();
    for (auto& f : accumulating)
      if (f.valid()) f.wait();
    throw;
  }
  pool.reset();

  for (auto& s : shards) {
    res.all.merge(std::move(s->all));
    if (campaign) {
      if (!res.campaign) res.campaign.emplace();
      res.campaign->merge(std::move(s->campaign));
    }
  }
  res.all.finalize();
  if (res.campaign) res.campaign->finalize();
  return res;
}

}  // namespace botlens::analytics
