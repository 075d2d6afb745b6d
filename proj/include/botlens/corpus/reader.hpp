// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <zlib.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "botlens/corpus/record.hpp"
#include "botlens/error.hpp"
#include "json.hpp"

namespace botlens::corpus {

/// Line-oriented reader over plain or gzip files. Compression is detected
/// from the first two bytes (1f 8b), not from the file name.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path) : path_(path) {
    std::FILE* probe = std::fopen(path.c_str(), "rb");
    if (!probe) throw DataError("cannot open " + path.string());
    unsigned char magic[2] = {0, 0};
    size_t got = std::fread(magic, 1, 2, probe);
    std::fclose(probe);
    gzip_ = got == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
    if (gzip_) {
      gz_ = gzopen(path.c_str(), "rb");
      if (!gz_) throw DataError("cannot open " + path.string());
      gzbuffer(gz_, 1 << 17);
    } else {
      file_ = std::fopen(path.c_str(), "rb");
      if (!file_) throw DataError("cannot open " + path.string());
    }
    buf_.resize(1 << 18);
  }

  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  ~LineReader() {
    if (gz_) gzclose(gz_);
    if (file_) std::fclose(file_);
  }

  bool gzip() const { return gzip_; }

  /// Next line without its terminator ("\n" or "\r\n"). The view stays valid
  /// until the following call.
  bool next(std::string_view& line) {
    for (;;) {
      auto nl = std::string_view(buf_.data() + begin_, end_ - begin_).find('\n');
      if (nl != std::string_view::npos) {
        line = std::string_view(buf_.data() + begin_, nl);
        begin_ += nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return true;
      }
      if (eof_) {
        if (begin_ == end_) return false;
        line = std::string_view(buf_.data() + begin_, end_ - begin_);
        begin_ = end_;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return true;
      }
      fill();
    }
  }

 private:
  void fill() {
    if (begin_ > 0) {
      std::copy(buf_.begin() + static_cast<std::ptrdiff_t>(begin_),
                buf_.begin() + static_cast<std::ptrdiff_t>(end_), buf_.begin());
      end_ -= begin_;
      begin_ = 0;
    }
    if (end_ == buf_.size()) buf_.resize(buf_.size() * 2);
    size_t want = buf_.size() - end_;
    size_t got = 0;
    if (gzip_) {
      int n = gzread(gz_, buf_.data() + end_, static_cast<unsigned>(want));
      if (n < 0) {
        int err = 0;
        throw DataError("read error in " + path_.string() + ": " + gzerror(gz_, &err));
      }
      got = static_cast<size_t>(n);
    } else {
      got = std::fread(buf_.data() + end_, 1, want, file_);
      if (got < want && std::ferror(file_)) throw DataError("read error in " + path_.string());
    }
    if (got == 0) eof_ = true;
    end_ += got;
  }

  std::filesystem::path path_;
  bool gzip_ = false;
  gzFile gz_ = nullptr;
  std::FILE* file_ = nullptr;
  std::vector<char> buf_;
  size_t begin_ = 0;
  size_t end_ = 0;
  bool eof_ = false;
};

/// Accounting for one ingest. parsed + failed + duplicate_ids == lines.
struct IngestReport {
  std::uint64_t lines = 0;
  std::uint64_t parsed = 0;
  std::uint64_t failed = 0;
  std::uint64_t duplicate_ids = 0;
  std::uint64_t blank_lines = 0;  // skipped, not counted in `lines`
  std::uint64_t bytes = 0;
  std::vector<std::string> gzip_files;
  /// First failures, capped at kMaxFailures; `failed` holds the full count.
  std::vector<std::pair<std::string, ParseFailure>> failures;

  static constexpr size_t kMaxFailures = 1000;

  void record_failure(const std::string& file, ParseFailure f) {
    ++failed;
    if (failures.size() < kMaxFailures) failures.emplace_back(file, std::move(f));
  }
};

inline nlohmann::ordered_json to_json(const IngestReport& r) {
  nlohmann::ordered_json j;
  j["lines"] = r.lines;
  j["parsed"] = r.parsed;
  j["failed"] = r.failed;
  j["duplicate_ids"] = r.duplicate_ids;
  j["blank_lines"] = r.blank_lines;
  j["bytes"] = r.bytes;
  j["gzip_files"] = r.gzip_files;
  auto failures = nlohmann::ordered_json::array();
  for (const auto& [file, f] : r.failures) {
    failures.push_back({{"file", file}, {"line", f.line}, {"reason", to_string(f.reason)}, {"detail", f.detail}});
  }
  j["failures"] = std::move(failures);
  return j;
}

/// Tracks tweet ids already yielded; the first occurrence wins.
class DedupSet {
 public:
  bool insert(const std::string& id) { return seen_.insert(id).second; }
  size_t size() const { return seen_.size(); }

 private:
  std::unordered_set<std::string> seen_;
};

using RecordSink = std::function<void(TweetRecord&&)>;
using FailureSink = std::function<void(const std::string& file, const ParseFailure&)>;

/// Streams every record of `paths` in file order into `sink`, dropping
/// malformed lines and duplicate tweet ids. Blank lines are skipped.
inline IngestReport load_corpus(const std::vector<std::filesystem::path>& paths, const RecordSink& sink,
                                const FailureSink& on_failure = {}) {
  IngestReport report;
  DedupSet seen;
  for (const auto& path : paths) {
    LineReader reader(path);
    if (reader.gzip()) report.gzip_files.push_back(path.string());
    std::string_view line;
    std::size_t line_no = 0;
    while (reader.next(line)) {
      ++line_no;
      report.bytes += line.size() + 1;
      if (line.find_first_not_of(" \t") == std::string_view::npos) {
        ++report.blank_lines;
        continue;
      }
      ++report.lines;
      auto result = parse_record(line, line_no);
      if (auto* failure = std::get_if<ParseFailure>(&result)) {
        if (on_failure) on_failure(path.string(), *failure);
        report.record_failure(path.string(), std::move(*failure));
        continue;
      }
      auto& rec = std::get<TweetRecord>(result);
      if (!seen.insert(rec.tweet_id)) {
        ++report.duplicate_ids;
        continue;
      }
      ++report.parsed;
      sink(std::move(rec));
    }
  }
  return report;
}

/// Convenience for tests and small corpora.
inline std::vector<TweetRecord> read_corpus(const std::vector<std::filesystem::path>& paths,
                                            IngestReport* report = nullptr) {
  std::vector<TweetRecord> out;
  auto r = load_corpus(paths, [&](TweetRecord&& rec) { out.push_back(std::move(rec)); });
  if (report) *report = std::move(r);
  return out;
}

}  // namespace botlens::corpus
