#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace snacs {

struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Result of a WordNet lookup. Synset ids are "<pos letter><8-digit offset>",
// e.g. "n00001740". Lexfile and holonyms come from the first sense.
struct WordnetEntry {
  bool present = false;
  std::string lemma;  // normalized form that matched (lowercase, '_' joined)
  std::string first_synset;
  std::vector<std::string> synsets;  // sense order
  std::string lexfile;
  std::vector<std::string> part_holonyms;
  std::vector<std::string> member_holonyms;
  std::vector<std::string> substance_holonyms;
};

// Reader for the plain-file WordNet database layout: index.{noun,verb,adj,adv}
// and data.{noun,verb,adj,adv} under one directory. Only the fields needed for
// feature extraction are retained.
class Wordnet {
 public:
  static Wordnet load(const std::string& dir);

  // pos_hint is a universal POS tag; unknown hints try n, v, a, r in order.
  WordnetEntry lookup(std::string_view word, std::string_view pos_hint) const;

 private:
  struct Synset {
    int lexfile = -1;
    std::vector<std::string> part_holonyms;
    std::vector<std::string> member_holonyms;
    std::vector<std::string> substance_holonyms;
  };
  // keyed by pos letter (n/v/a/r)
  std::map<char, std::unordered_map<std::string, std::vector<std::string>>> index_;
  std::map<char, std::unordered_map<std::string, Synset>> data_;  // synset id -> record

  WordnetEntry lookup_pos(const std::string& word, char pos) const;
};

// Word -> set of thesaurus division identifiers, from a two-column TSV file.
class Roget {
 public:
  static Roget load(const std::string& path);
  std::set<std::string> lookup(std::string_view word) const;

 private:
  std::unordered_map<std::string, std::set<std::string>> divisions_;
};

// Optional resources used by feature extraction. Lookups on an absent
// resource report absence; they never fabricate entries.
struct LexicalResourceBundle {
  std::optional<Wordnet> wordnet;
  std::optional<Roget> roget;

  bool has_wordnet() const { return wordnet.has_value(); }
  bool has_roget() const { return roget.has_value(); }

  WordnetEntry lookup_wordnet(std::string_view word, std::string_view pos_hint) const {
    return wordnet ? wordnet->lookup(word, pos_hint) : WordnetEntry{};
  }
  std::set<std::string> lookup_roget(std::string_view word) const {
    return roget ? roget->lookup(word) : std::set<std::string>{};
  }
};

std::string_view wordnet_lexfile_name(int lex_filenum);

}  // namespace snacs
