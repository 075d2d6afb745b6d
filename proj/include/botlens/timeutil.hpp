// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace botlens {

/// All timestamps are UTC at second resolution.
using Timestamp = std::chrono::sys_seconds;

namespace detail {

inline bool read_digits(std::string_view s, size_t& pos, size_t count, int& out) {
  if (pos + count > s.size()) return false;
  int v = 0;
  for (size_t i = 0; i < count; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  pos += count;
  out = v;
  return true;
}

inline std::optional<Timestamp> make_utc(int y, int mo, int d, int h, int mi, int sec) {
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
}

inline std::optional<Timestamp> parse_epoch(std::string_view s) {
  // integer part, optional fraction (floored)
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  if (i == s.size()) return std::nullopt;
  std::int64_t v = 0;
  size_t digits = 0;
  for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i, ++digits) {
    if (digits >= 15) return std::nullopt;
    v = v * 10 + (s[i] - '0');
  }
  if (digits == 0) return std::nullopt;
  bool frac_nonzero = false;
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) frac_nonzero |= s[i] != '0';
  }
  if (i != s.size()) return std::nullopt;
  if (neg) v = -v - (frac_nonzero ? 1 : 0);
  return Timestamp{std::chrono::seconds{v}};
}

inline int month_from_abbrev(std::string_view m) {
  static constexpr std::string_view kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                 "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  for (int i = 0; i < 12; ++i)
    if (kMonths[i] == m) return i + 1;
  return 0;
}

// "Wed May 03 12:00:00 +0000 2017", the platform's native created_at form.
inline std::optional<Timestamp> parse_platform(std::string_view s) {
  if (s.size() != 30 || s[3] != ' ' || s[7] != ' ' || s[10] != ' ' || s[19] != ' ' || s[25] != ' ')
    return std::nullopt;
  int mo = month_from_abbrev(s.substr(4, 3));
  if (mo == 0) return std::nullopt;
  size_t p = 8;
  int d, h, mi, sec, y, oh, om;
  if (!read_digits(s, p, 2, d)) return std::nullopt;
  p = 11;
  if (!read_digits(s, p, 2, h) || s[p++] != ':' || !read_digits(s, p, 2, mi) || s[p++] != ':' ||
      !read_digits(s, p, 2, sec))
    return std::nullopt;
  p = 20;
  char sign = s[p++];
  if ((sign != '+' && sign != '-') || !read_digits(s, p, 2, oh) || !read_digits(s, p, 2, om))
    return std::nullopt;
  p = 26;
  if (!read_digits(s, p, 4, y)) return std::nullopt;
  auto t = make_utc(y, mo, d, h, mi, sec);
  if (!t) return std::nullopt;
  std::chrono::seconds off{(oh * 60 + om) * 60};
  return sign == '+' ? *t - off : *t + off;
}

}  // namespace detail

/// Accepts ISO-8601 (`2017-05-05T18:22:31Z`, optional fraction, `Z`/`±hh:mm`
/// offset, space separator, bare date), epoch seconds as a digit string, and
/// the platform's native `Wed May 03 12:00:00 +0000 2017` form.
inline std::optional<Timestamp> parse_timestamp(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  if (auto e = detail::parse_epoch(s)) return e;
  if (s.size() == 30 && s[3] == ' ') return detail::parse_platform(s);

  size_t p = 0;
  int y, mo, d, h = 0, mi = 0, sec = 0;
  if (!detail::read_digits(s, p, 4, y) || p >= s.size() || s[p++] != '-' ||
      !detail::read_digits(s, p, 2, mo) || p >= s.size() || s[p++] != '-' ||
      !detail::read_digits(s, p, 2, d))
    return std::nullopt;
  if (p == s.size()) return detail::make_utc(y, mo, d, 0, 0, 0);
  if (s[p] != 'T' && s[p] != 't' && s[p] != ' ') return std::nullopt;
  ++p;
  if (!detail::read_digits(s, p, 2, h) || p >= s.size() || s[p++] != ':' ||
      !detail::read_digits(s, p, 2, mi))
    return std::nullopt;
  if (p < s.size() && s[p] == ':') {
    ++p;
    if (!detail::read_digits(s, p, 2, sec)) return std::nullopt;
    if (p < s.size() && (s[p] == '.' || s[p] == ',')) {
      ++p;
      size_t start = p;
      while (p < s.size() && s[p] >= '0' && s[p] <= '9') ++p;
      if (p == start) return std::nullopt;
    }
  }
  auto t = detail::make_utc(y, mo, d, h, mi, sec);
  if (!t) return std::nullopt;
  if (p == s.size()) return t;
  if ((s[p] == 'Z' || s[p] == 'z') && p + 1 == s.size()) return t;
  char sign = s[p++];
  if (sign != '+' && sign != '-') return std::nullopt;
  int oh, om = 0;
  if (!detail::read_digits(s, p, 2, oh)) return std::nullopt;
  if (p < s.size() && s[p] == ':') ++p;
  if (p < s.size() && !detail::read_digits(s, p, 2, om)) return std::nullopt;
  if (p != s.size() || oh > 23 || om > 59) return std::nullopt;
  std::chrono::seconds off{(oh * 60 + om) * 60};
  return sign == '+' ? *t - off : *t + off;
}

inline std::int64_t to_epoch(Timestamp t) { return t.time_since_epoch().count(); }
inline Timestamp from_epoch(std::int64_t s) { return Timestamp{std::chrono::seconds{s}}; }

/// `YYYY-MM-DDTHH:MM:SSZ`
inline std::string format_utc(Timestamp t) {
  using namespace std::chrono;
  auto day_point = floor<days>(t);
  year_month_day ymd{day_point};
  hh_mm_ss hms{t - day_point};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long long>(hms.hours().count()),
                static_cast<long long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

/// Half-open UTC interval [begin, end).
struct TimeWindow {
  Timestamp begin;
  Timestamp end;

  bool contains(Timestamp t) const { return t >= begin && t < end; }
  bool valid() const { return begin < end; }
};

/// `<start>/<end>` with either side in any accepted timestamp form.
inline std::optional<TimeWindow> parse_window(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto a = parse_timestamp(s.substr(0, slash));
  auto b = parse_timestamp(s.substr(slash + 1));
  if (!a || !b) return std::nullopt;
  return TimeWindow{*a, *b};
}

}  // namespace botlens
