// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace botlens::text {

/// Decodes one code point starting at `pos` and advances it. Invalid or
/// truncated sequences yield U+FFFD and advance by one byte.
inline char32_t next_cp(std::string_view s, size_t& pos) {
  auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + len > s.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (int i = 1; i < len; ++i) {
    auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  return cp;
}

inline void append_cp(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

/// Simple (one-to-one) lowercase mapping for Latin, Greek and Cyrillic.
/// Code points outside those blocks map to themselves.
inline char32_t to_lower(char32_t c) {
  if (c < 0x80) return (c >= 'A' && c <= 'Z') ? c + 32 : c;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c >= 0x100 && c <= 0x17F) {
    if (c == 0x130) return 'i';
    if (c == 0x178) return 0xFF;
    if ((c >= 0x100 && c <= 0x137) || (c >= 0x14A && c <= 0x177)) return (c % 2 == 0) ? c + 1 : c;
    if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) return (c % 2 == 1) ? c + 1 : c;
    return c;
  }
  if (c >= 0x1E00 && c <= 0x1EFF) return (c % 2 == 0 && !(c >= 0x1E96 && c <= 0x1E9F)) ? c + 1 : c;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 0x20;
  if (c == 0x386) return 0x3AC;
  if (c >= 0x388 && c <= 0x38A) return c + 0x25;
  if (c == 0x38C) return 0x3CC;
  if (c == 0x38E || c == 0x38F) return c + 0x3F;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  if (c >= 0xFF21 && c <= 0xFF3A) return c + 0x20;
  return c;
}

inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t pos = 0;
  while (pos < s.size()) {
    auto b = static_cast<unsigned char>(s[pos]);
    if (b < 0x80) {
      out.push_back(static_cast<char>((b >= 'A' && b <= 'Z') ? b + 32 : b));
      ++pos;
    } else {
      append_cp(out, to_lower(next_cp(s, pos)));
    }
  }
  return out;
}

inline bool is_digit(char32_t c) {
  return (c >= '0' && c <= '9') || (c >= 0x660 && c <= 0x669) || (c >= 0xFF10 && c <= 0xFF19);
}

/// Letters and digits in the scripts the corpora actually carry. Combining
/// marks count as part of the word they decorate.
inline bool is_alnum(char32_t c) {
  if (c < 0x80) return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  if (c == 0xAA || c == 0xB5 || c == 0xBA) return true;
  if (c >= 0xC0 && c <= 0x24F) return c != 0xD7 && c != 0xF7;
  if (c >= 0x250 && c <= 0x2AF) return true;
  if (c >= 0x300 && c <= 0x36F) return true;
  if (c >= 0x370 && c <= 0x3FF) return c != 0x37E && c != 0x387 && c != 0x375;
  if (c >= 0x400 && c <= 0x52F) return !(c >= 0x482 && c <= 0x489);
  if (c >= 0x531 && c <= 0x587) return true;
  if (c >= 0x5D0 && c <= 0x5EA) return true;
  if ((c >= 0x620 && c <= 0x64A) || (c >= 0x660 && c <= 0x669) || (c >= 0x671 && c <= 0x6D3))
    return true;
  if (c >= 0x900 && c <= 0x97F) return !(c == 0x964 || c == 0x965 || c == 0x970);
  if (c >= 0xE01 && c <= 0xE4E) return true;
  if (c >= 0x1E00 && c <= 0x1FFF) return true;
  if (c >= 0x3040 && c <= 0x30FF) return c != 0x30FB;
  if ((c >= 0x3400 && c <= 0x4DBF) || (c >= 0x4E00 && c <= 0x9FFF)) return true;
  if (c >= 0xAC00 && c <= 0xD7A3) return true;
  if ((c >= 0xFF10 && c <= 0xFF19) || (c >= 0xFF21 && c <= 0xFF3A) || (c >= 0xFF41 && c <= 0xFF5A))
    return true;
  return false;
}

/// Characters allowed in hashtags and screen names.
inline bool is_word(char32_t c) { return c == '_' || is_alnum(c); }

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

inline bool starts_with_url(std::string_view s) {
  auto ieq = [](std::string_view a, std::string_view prefix) {
    if (a.size() < prefix.size()) return false;
    for (size_t i = 0; i < prefix.size(); ++i) {
      char c = a[i];
      if (c >= 'A' && c <= 'Z') c += 32;
      if (c != prefix[i]) return false;
    }
    return true;
  };
  return ieq(s, "http://") || ieq(s, "https://");
}

/// Fallback entity extraction for archives without platform entities:
/// `#`+word chars, `@`+word chars, and `http(s)://`+non-space run.
struct ExtractedEntities {
  std::vector<std::string> hashtags;
  std::vector<std::string> mentions;
  std::vector<std::string> urls;
};

inline ExtractedEntities extract_entities(std::string_view s) {
  ExtractedEntities out;
  size_t pos = 0;
  bool prev_word = false;
  while (pos < s.size()) {
    char c = s[pos];
    if ((c == 'h' || c == 'H') && !prev_word && starts_with_url(s.substr(pos))) {
      size_t end = pos;
      while (end < s.size() && !is_space(s[end])) ++end;
      out.urls.emplace_back(s.substr(pos, end - pos));
      pos = end;
      prev_word = false;
      continue;
    }
    if ((c == '#' || c == '@') && !prev_word) {
      size_t end = pos + 1;
      size_t probe = end;
      while (probe < s.size()) {
        size_t next = probe;
        if (!is_word(next_cp(s, next))) break;
        probe = next;
      }
      end = probe;
      if (end > pos + 1) {
        auto body = to_lower(s.substr(pos + 1, end - pos - 1));
        (c == '#' ? out.hashtags : out.mentions).push_back(std::move(body));
        pos = end;
        prev_word = true;
        continue;
      }
    }
    size_t next = pos;
    prev_word = is_word(next_cp(s, next));
    pos = next;
  }
  return out;
}

}  // namespace botlens::text
