#pragma once

#include <set>
#include <string>
#include <vector>

#include "snacs/corpus.hpp"

namespace snacs {

// One multiword lexicon entry: a lemma sequence plus, for each junction
// between consecutive lemmas, the largest gap attested in training
// (0 = the two lemmas were always adjacent).
struct MweEntry {
  std::vector<std::string> lemmas;  // size >= 2
  std::vector<int> max_gap;         // size lemmas.size() - 1

  bool operator==(const MweEntry&) const = default;
  bool operator<(const MweEntry& o) const {
    return lemmas != o.lemmas ? lemmas < o.lemmas : max_gap < o.max_gap;
  }
};

struct TargetLexicons {
  std::vector<MweEntry> whitelist;  // construal-bearing multiword expressions
  std::vector<MweEntry> blacklist;  // candidate-POS-containing MWEs without a construal
  std::set<std::string> adpositions;
  std::set<std::string> possessives;
  std::set<std::string> subordinators;
  std::set<std::string> adverbs;
  // Dependency relations borne by the head verb of a construal-bearing
  // infinitival "to" in training; stands in for the unpublished filter.
  std::set<std::string> infinitival_contexts;

  bool operator==(const TargetLexicons&) const = default;
};

struct TargetPrediction {
  std::vector<int> token_indices;  // strictly increasing

  bool operator==(const TargetPrediction&) const = default;
};

enum class IdMode { Precision, Recall };

struct IdOptions {
  IdMode mode = IdMode::Precision;
  // When true, infinitival "to" in too/enough comparatives is excluded
  // instead of retained.
  bool too_enough_excludes = false;
};

TargetLexicons build_lexicons(const std::vector<Sentence>& train);

std::vector<TargetPrediction> identify_targets(const Sentence& sentence,
                                               const TargetLexicons& lex,
                                               const IdOptions& opts = {});

struct TargetScore {
  long tp = 0, fp = 0, fn = 0;
  long exact = 0;     // = tp
  long partial = 0;   // predictions overlapping but not equal to a gold target
  long missed = 0;    // gold targets no prediction overlaps
  long spurious = 0;  // predictions overlapping no gold target
  double precision = 0, recall = 0, f1 = 0;
  bool zero_predictions = false;
};

// Exact token-set match scoring. Gold targets are the construal-bearing
// expressions; special-labeled units are negatives, except UNK units, which
// count neither way (predictions overlapping them are set aside).
TargetScore score_targets(const std::vector<std::vector<TargetPrediction>>& pred,
                          const std::vector<Sentence>& gold);

std::string serialize_lexicons(const TargetLexicons& lex);
TargetLexicons parse_lexicons(std::string_view text);

}  // namespace snacs
