// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_set>

#include "botlens/error.hpp"
#include "botlens/text.hpp"

namespace botlens::analytics {

class Stoplist {
 public:
  Stoplist() = default;
  Stoplist(std::initializer_list<std::string_view> words) {
    for (auto w : words) add(w);
  }

  void add(std::string_view word) {
    auto w = text::to_lower(word);
    if (!w.empty()) words_.insert(std::move(w));
  }

  /// One word per line; blank lines and lines starting with '#' are skipped.
  void add_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read stoplist " + path.string());
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
      std::size_t start = line.find_first_not_of(" \t");
      if (start == std::string::npos || line[start] == '#') continue;
      add(std::string_view(line).substr(start));
    }
  }

  bool contains(const std::string& lower_word) const { return words_.count(lower_word) != 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Platform noise that survives tokenization of tweets.
inline constexpr std::string_view kPlatformStopwords[] = {
    "rt", "amp", "http", "https", "www", "via", "co", "com", "fr", "html", "gt", "lt"};

inline constexpr std::string_view kEnglishStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are", "aren", "as", "at",
    "be", "because", "been", "before", "being", "below", "between", "both", "but", "by", "can", "cannot", "could",
    "couldn", "did", "didn", "do", "does", "doesn", "doing", "don", "down", "during", "each", "few", "for", "from",
    "further", "had", "hadn", "has", "hasn", "have", "haven", "having", "he", "her", "here", "hers", "herself",
    "him", "himself", "his", "how", "i", "if", "in", "into", "is", "isn", "it", "its", "itself", "just", "ll",
    "me", "more", "most", "my", "myself", "no", "nor", "not", "now", "of", "off", "on", "once", "only", "or",
    "other", "ought", "our", "ours", "ourselves", "out", "over", "own", "re", "same", "she", "should", "shouldn",
    "so", "some", "such", "than", "that", "the", "their", "theirs", "them", "themselves", "then", "there", "these",
    "they", "this", "those", "through", "to", "too", "under", "until", "up", "ve", "very", "was", "wasn", "we",
    "were", "weren", "what", "when", "where", "which", "while", "who", "whom", "why", "will", "with", "won",
    "would", "wouldn", "you", "your", "yours", "yourself", "yourselves", "get", "got", "also", "like", "one"};

inline constexpr std::string_view kFrenchStopwords[] = {
    "au", "aux", "avec", "ce", "ces", "dans", "de", "des", "du", "elle", "elles", "en", "et", "eux", "il", "ils",
    "je", "la", "le", "les", "leur", "leurs", "lui", "ma", "mais", "me", "même", "mes", "moi", "mon", "ne", "nos",
    "notre", "nous", "on", "ou", "où", "par", "pas", "pour", "qu", "que", "qui", "sa", "se", "ses", "son", "sur",
    "ta", "te", "tes", "toi", "ton", "tu", "un", "une", "vos", "votre", "vous", "ça", "cette", "cet", "ceci",
    "cela", "celà", "ici", "là", "été", "étée", "étées", "étés", "étant", "suis", "es", "est", "sommes", "êtes",
    "sont", "serai", "sera", "serons", "serez", "seront", "serait", "seraient", "étais", "était", "étions",
    "étiez", "étaient", "fut", "furent", "soit", "soient", "ai", "as", "avons", "avez", "ont", "aura", "auront",
    "aurait", "avait", "avaient", "eu", "eue", "ayant", "si", "sans", "sous", "très", "tout", "tous", "toute",
    "toutes", "plus", "moins", "comme", "aussi", "donc", "car", "ni", "or", "alors", "quand", "encore", "déjà",
    "bien", "fait", "faire", "peut", "chez", "entre", "vers", "après", "avant", "depuis", "contre", "leur",
    "quoi", "dont", "lors", "ils", "celle", "celui", "ceux", "rien", "non", "oui", "y", "c", "d", "j", "l", "m",
    "n", "s", "t"};

/// English and French stopwords plus platform noise ("rt", "amp", ...).
inline Stoplist default_stoplist() {
  Stoplist s;
  for (auto w : kPlatformStopwords) s.add(w);
  for (auto w : kEnglishStopwords) s.add(w);
  for (auto w : kFrenchStopwords) s.add(w);
  return s;
}

}  // namespace botlens::analytics
