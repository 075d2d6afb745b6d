// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "botlens/analytics/stoplist.hpp"
#include "botlens/text.hpp"

namespace botlens::analytics {

namespace detail {

inline bool url_chunk(std::string_view chunk) {
  if (text::starts_with_url(chunk)) return true;
  return chunk.size() >= 4 && (chunk[0] == 'w' || chunk[0] == 'W') && (chunk[1] == 'w' || chunk[1] == 'W') &&
         (chunk[2] == 'w' || chunk[2] == 'W') && chunk[3] == '.';
}

}  // namespace detail

/// Calls fn(token) for each content word of `s`. Whitespace chunks that are
/// URLs or '#'/'@' entities are skipped whole; the rest split on anything
/// that is not a letter or digit (so apostrophes split "l'élection").
/// Tokens are lowercased; those shorter than two code points, all digits,
/// or on the stoplist are dropped.
template <typename Fn>
void for_each_token(std::string_view s, const Stoplist& stop, Fn&& fn) {
  std::string tok;
  std::size_t cps = 0;
  bool all_digits = true;
  auto flush = [&] {
    if (cps >= 2 && !all_digits && !stop.contains(tok)) fn(tok);
    tok.clear();
    cps = 0;
    all_digits = true;
  };
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && text::is_space(s[pos])) ++pos;
    std::size_t end = pos;
    while (end < s.size() && !text::is_space(s[end])) ++end;
    std::string_view chunk = s.substr(pos, end - pos);
    pos = end;
    if (chunk.empty() || chunk[0] == '#' || chunk[0] == '@' || detail::url_chunk(chunk)) continue;
    std::size_t i = 0;
    while (i < chunk.size()) {
      char32_t c = text::next_cp(chunk, i);
      if (text::is_alnum(c)) {
        text::append_cp(tok, text::to_lower(c));
        ++cps;
        all_digits = all_digits && text::is_digit(c);
      } else if (!tok.empty()) {
        flush();
      }
    }
    if (!tok.empty()) flush();
  }
}

inline std::vector<std::string> tokenize(std::string_view s, const Stoplist& stop) {
  std::vector<std::string> out;
  for_each_token(s, stop, [&](const std::string& t) { out.push_back(t); });
  return out;
}

}  // namespace botlens::analytics
