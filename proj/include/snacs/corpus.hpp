#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "snacs/hierarchy.hpp"

namespace snacs {

// Non-construal markers for targets deemed not to evoke a semantic relation.
enum class SpecialLabel { NonsnacsInf, DiscExpr, Coord, OpaquePoss, Unk };

std::string_view to_string(SpecialLabel s);  // "`i" "`d" "`c" "`$" "??"
std::optional<SpecialLabel> special_from_string(std::string_view s);

// Lexical category of an expression: which label inventory (if any) applies.
enum class Lexcat { P, PP, InfP, Poss, PronPoss, Disc, Cconj, Other };

std::string_view to_string(Lexcat c);
std::optional<Lexcat> lexcat_from_string(std::string_view s);

// Construal or UNK may only annotate these categories.
inline bool lexcat_is_snacs(Lexcat c) {
  return c == Lexcat::P || c == Lexcat::PP || c == Lexcat::InfP || c == Lexcat::Poss ||
         c == Lexcat::PronPoss;
}

struct Token {
  int index = 0;  // 1-based position within the sentence
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  std::string feats = "_";
  int head = 0;  // 0 = syntactic root
  std::string deprel;
  std::string deps = "_";
  std::string misc = "_";
  std::string ner = "_";  // "_" = no tag

  bool operator==(const Token&) const = default;
};

// An annotation target: one or more (possibly discontiguous) tokens carrying
// a lexical category and at most one of {Construal, SpecialLabel}.
struct LexicalExpression {
  std::vector<int> token_indices;  // strictly increasing
  Lexcat lexcat = Lexcat::Other;
  std::optional<Construal> construal;
  std::optional<SpecialLabel> special;

  bool is_multiword() const { return token_indices.size() > 1; }
  bool operator==(const LexicalExpression&) const = default;
};

struct Sentence {
  std::string id;
  std::string doc_id;
  std::vector<Token> tokens;
  std::vector<LexicalExpression> expressions;  // ordered by first token index

  const Token& token(int index) const { return tokens.at(static_cast<size_t>(index) - 1); }
  bool operator==(const Sentence&) const = default;
};

struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

// Counts in the shape of the published split table.
struct SplitStats {
  long documents = 0;
  long sentences = 0;
  long tokens = 0;
  long annotated_targets = 0;  // expressions bearing a Construal
  long role_eq_function = 0;
  long p_or_pp = 0;
  long multiword_units = 0;  // multiword among the P/PP targets
  long infinitive_to = 0;
  long genitive_clitic = 0;
  long possessive_pronoun = 0;
  long attested_labels = 0;  // distinct labels over both slots
  long unique_roles = 0;
  long unique_functions = 0;
  long unique_pairs = 0;
  long unique_pairs_role_eq_function = 0;
};

// Parses the 14-column tab-separated corpus format ("snacs-conllu").
// Structural problems raise ParseError with line/column; sentence-level
// invariant violations raise ParseError naming the sentence id.
std::vector<Sentence> parse_corpus(std::string_view text);
std::vector<Sentence> parse_corpus_file(const std::string& path);

// Canonical serialization; parse(serialize(s)) == s for any valid input.
std::string serialize_corpus(const std::vector<Sentence>& sentences);
std::string serialize_sentence(const Sentence& sentence);

SplitStats corpus_stats(const std::vector<Sentence>& sentences);

struct Violation {
  std::string sentence_id;
  std::string message;
};

// Data-model validation: token/head ranges, expression disjointness and index
// validity, lexcat/annotation pairing, construal membership in the hierarchy.
// Violations are data, not failures.
std::vector<Violation> validate_corpus(const std::vector<Sentence>& sentences, const Hierarchy& h,
                                       const std::unordered_set<std::string>& role_only = {});

}  // namespace snacs
