#include "snacs/targetid.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "snacs/util.hpp"

namespace snacs {

namespace {

bool candidate_pos(const Token& t) {
  return t.xpos == "POS" || t.xpos == "PRP$" || t.upos == "ADP" || t.upos == "PART" ||
         t.upos == "ADV" || t.upos == "SCONJ";
}

bool possessive_xpos(const Token& t) { return t.xpos == "POS" || t.xpos == "PRP$"; }

std::vector<std::string> expression_lemmas(const Sentence& s, const LexicalExpression& e) {
  std::vector<std::string> lemmas;
  for (int idx : e.token_indices) lemmas.push_back(s.token(idx).lemma);
  return lemmas;
}

void merge_entry(std::map<std::vector<std::string>, std::vector<int>>& into,
                 const std::vector<std::string>& lemmas, const std::vector<int>& gaps) {
  auto [it, fresh] = into.emplace(lemmas, gaps);
  if (!fresh)
    for (size_t j = 0; j < gaps.size(); ++j) it->second[j] = std::max(it->second[j], gaps[j]);
}

// Matches entry starting at token index start (1-based); returns matched
// indices or empty. Gap tokens are skipped, not claimed.
std::vector<int> match_mwe(const Sentence& s, const std::vector<bool>& consumed,
                           const MweEntry& entry, int start) {
  const int n = static_cast<int>(s.tokens.size());
  if (consumed[start] || s.token(start).lemma != entry.lemmas[0]) return {};
  std::vector<int> matched{start};
  for (size_t j = 1; j < entry.lemmas.size(); ++j) {
    int limit = matched.back() + 1 + entry.max_gap[j - 1];
    int found = 0;
    for (int k = matched.back() + 1; k <= std::min(limit, n); ++k) {
      if (!consumed[k] && s.token(k).lemma == entry.lemmas[j]) {
        found = k;
        break;
      }
    }
    if (!found) return {};
    matched.push_back(found);
  }
  return matched;
}

struct MweMatch {
  std::vector<int> indices;
  bool from_whitelist = false;
  const MweEntry* entry = nullptr;
};

// Preference order for competing matches at one start position.
bool better(const MweMatch& a, const MweMatch& b) {
  if (a.indices.size() != b.indices.size()) return a.indices.size() > b.indices.size();
  if (a.indices.back() != b.indices.back()) return a.indices.back() < b.indices.back();
  if (a.from_whitelist != b.from_whitelist) return a.from_whitelist;
  return a.entry->lemmas < b.entry->lemmas;
}

bool too_enough_construction(const Sentence& s, const Token& to) {
  if (to.head == 0) return false;
  int grandparent = s.token(to.head).head;
  if (grandparent == 0) return false;
  for (const Token& x : s.tokens)
    if (x.deprel == "advmod" && x.head == grandparent && (x.lemma == "too" || x.lemma == "enough"))
      return true;
  return false;
}

// "I opened the door for Steve to take out the trash": the subject-marking
// `for` shares its head with an nsubj and an infinitival `to`.
bool for_subject_marker(const Sentence& s, const Token& t) {
  if (t.lemma != "for" || t.deprel != "mark" || t.head == 0) return false;
  bool has_to = false, has_subj = false;
  for (const Token& x : s.tokens) {
    if (x.head != t.head || x.index == t.index) continue;
    if (x.deprel == "mark" && x.upos == "PART" && x.lemma == "to") has_to = true;
    if (x.deprel.starts_with("nsubj")) has_subj = true;
  }
  return has_to && has_subj;
}

bool overlaps(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  return false;
}

}  // namespace

TargetLexicons build_lexicons(const std::vector<Sentence>& train) {
  TargetLexicons lex;
  std::map<std::vector<std::string>, std::vector<int>> white, black;

  for (const Sentence& s : train) {
    for (const LexicalExpression& e : s.expressions) {
      if (e.special && *e.special == SpecialLabel::Unk) continue;

      if (e.is_multiword()) {
        std::vector<std::string> lemmas = expression_lemmas(s, e);
        std::vector<int> gaps;
        for (size_t j = 1; j < e.token_indices.size(); ++j)
          gaps.push_back(e.token_indices[j] - e.token_indices[j - 1] - 1);
        if (e.construal) {
          merge_entry(white, lemmas, gaps);
        } else {
          bool has_candidate = false;
          for (int idx : e.token_indices)
            if (candidate_pos(s.token(idx))) has_candidate = true;
          if (has_candidate) merge_entry(black, lemmas, gaps);
        }
        continue;
      }

      if (!e.construal) continue;
      const Token& t = s.token(e.token_indices.front());
      if (possessive_xpos(t)) {
        lex.possessives.insert(t.lemma);
      } else if (t.upos == "ADP") {
        lex.adpositions.insert(t.lemma);
      } else if (t.upos == "SCONJ") {
        lex.subordinators.insert(t.lemma);
      } else if (t.upos == "PART" && t.lemma == "to") {
        lex.infinitival_contexts.insert(t.head == 0 ? "root" : s.token(t.head).deprel);
      } else if (t.upos == "ADV" || t.upos == "PART") {
        lex.adverbs.insert(t.lemma);
      }
    }
  }

  // A sequence attested as a target anywhere outranks its blacklist uses.
  for (const auto& [lemmas, gaps] : white) black.erase(lemmas);
  for (auto& [lemmas, gaps] : white) lex.whitelist.push_back({lemmas, gaps});
  for (auto& [lemmas, gaps] : black) lex.blacklist.push_back({lemmas, gaps});
  return lex;
}

std::vector<TargetPrediction> identify_targets(const Sentence& sentence,
                                               const TargetLexicons& lex,
                                               const IdOptions& opts) {
  const int n = static_cast<int>(sentence.tokens.size());
  std::vector<bool> consumed(static_cast<size_t>(n) + 1, false);
  std::vector<TargetPrediction> out;

  for (int i = 1; i <= n; ++i) {
    if (consumed[i]) continue;
    MweMatch best;
    for (const auto* list : {&lex.whitelist, &lex.blacklist}) {
      for (const MweEntry& entry : *list) {
        auto matched = match_mwe(sentence, consumed, entry, i);
        if (matched.empty()) continue;
        MweMatch m{std::move(matched), list == &lex.whitelist, &entry};
        if (!best.entry || better(m, best)) best = std::move(m);
      }
    }
    if (!best.entry) continue;
    for (int idx : best.indices) consumed[idx] = true;
    if (best.from_whitelist) out.push_back({best.indices});
  }

  bool relax = opts.mode == IdMode::Recall;
  for (const Token& t : sentence.tokens) {
    if (consumed[t.index] || !candidate_pos(t)) continue;

    bool target;
    if (possessive_xpos(t)) {
      target = relax || lex.possessives.count(t.lemma) > 0;
    } else if (t.upos == "PART" && t.lemma == "to") {
      if (too_enough_construction(sentence, t)) {
        target = !opts.too_enough_excludes;
      } else {
        std::string context = t.head == 0 ? "root" : sentence.token(t.head).deprel;
        target = relax || lex.infinitival_contexts.count(context) > 0;
      }
    } else if (t.upos == "ADP" || t.upos == "SCONJ") {
      if (for_subject_marker(sentence, t)) {
        target = false;
      } else if (t.upos == "ADP") {
        target = relax || lex.adpositions.count(t.lemma) > 0;
      } else {
        target = relax || lex.subordinators.count(t.lemma) > 0;
      }
    } else {  // ADV, or PART other than infinitival to
      target = relax || lex.adverbs.count(t.lemma) > 0;
    }
    if (target) out.push_back({{t.index}});
  }

  std::sort(out.begin(), out.end(), [](const TargetPrediction& a, const TargetPrediction& b) {
    return a.token_indices.front() < b.token_indices.front();
  });
  return out;
}

TargetScore score_targets(const std::vector<std::vector<TargetPrediction>>& pred,
                          const std::vector<Sentence>& gold) {
  if (pred.size() != gold.size())
    throw std::runtime_error("score_targets: " + std::to_string(pred.size()) +
                             " prediction sentences vs " + std::to_string(gold.size()) +
                             " gold sentences");
  TargetScore sc;
  for (size_t i = 0; i < gold.size(); ++i) {
    std::vector<std::vector<int>> positives, unk;
    for (const LexicalExpression& e : gold[i].expressions) {
      if (e.construal) positives.push_back(e.token_indices);
      else if (e.special && *e.special == SpecialLabel::Unk) unk.push_back(e.token_indices);
    }

    std::vector<bool> gold_hit(positives.size(), false), gold_touched(positives.size(), false);
    for (const TargetPrediction& p : pred[i]) {
      bool skip = false;
      for (const auto& u : unk)
        if (overlaps(p.token_indices, u)) skip = true;
      if (skip) continue;  // unintelligible gold units count neither way

      bool exact = false, touched = false;
      for (size_t g = 0; g < positives.size(); ++g) {
        if (p.token_indices == positives[g]) {
          exact = true;
          gold_hit[g] = true;
        } else if (overlaps(p.token_indices, positives[g])) {
          touched = true;
          gold_touched[g] = true;
        }
      }
      if (exact) {
        ++sc.tp;
      } else {
        ++sc.fp;
        if (touched) ++sc.partial;
        else ++sc.spurious;
      }
    }
    for (size_t g = 0; g < positives.size(); ++g) {
      if (!gold_hit[g]) {
        ++sc.fn;
        if (!gold_touched[g]) ++sc.missed;
      }
    }
  }
  sc.exact = sc.tp;
  sc.zero_predictions = sc.tp + sc.fp == 0;
  sc.precision = sc.zero_predictions ? 0.0 : 100.0 * sc.tp / static_cast<double>(sc.tp + sc.fp);
  sc.recall = sc.tp + sc.fn == 0 ? 0.0 : 100.0 * sc.tp / static_cast<double>(sc.tp + sc.fn);
  sc.f1 = sc.precision + sc.recall == 0
              ? 0.0
              : 2 * sc.precision * sc.recall / (sc.precision + sc.recall);
  return sc;
}

namespace {

std::string mwe_line(const MweEntry& e) {
  std::vector<std::string> gaps;
  for (int g : e.max_gap) gaps.push_back(std::to_string(g));
  std::string line = join(gaps, ",");
  for (const std::string& lemma : e.lemmas) line += "\t" + lemma;
  return line;
}

MweEntry parse_mwe_line(const std::string& line, int lineno) {
  auto cols = split(line, '\t');
  MweEntry e;
  if (cols.size() >= 3) {
    for (const std::string& g : split(cols[0], ',')) {
      int v = -1;
      auto [p, ec] = std::from_chars(g.data(), g.data() + g.size(), v);
      if (ec != std::errc() || p != g.data() + g.size() || v < 0) v = -1;
      e.max_gap.push_back(v);
    }
    e.lemmas.assign(cols.begin() + 1, cols.end());
  }
  if (e.lemmas.size() < 2 || e.max_gap.size() != e.lemmas.size() - 1 ||
      std::find(e.max_gap.begin(), e.max_gap.end(), -1) != e.max_gap.end())
    throw std::runtime_error("lexicon file line " + std::to_string(lineno) +
                             ": expected <gaps><TAB><lemma>...");
  return e;
}

}  // namespace

std::string serialize_lexicons(const TargetLexicons& lex) {
  std::string out = "snacs-lexicons v1\n";
  out += "[whitelist]\n";
  for (const MweEntry& e : lex.whitelist) out += mwe_line(e) + "\n";
  out += "[blacklist]\n";
  for (const MweEntry& e : lex.blacklist) out += mwe_line(e) + "\n";
  const std::pair<const char*, const std::set<std::string>*> sections[] = {
      {"[adpositions]", &lex.adpositions},       {"[possessives]", &lex.possessives},
      {"[subordinators]", &lex.subordinators},   {"[adverbs]", &lex.adverbs},
      {"[infinitival_contexts]", &lex.infinitival_contexts},
  };
  for (const auto& [header, entries] : sections) {
    out += std::string(header) + "\n";
    for (const std::string& e : *entries) out += e + "\n";
  }
  return out;
}

TargetLexicons parse_lexicons(std::string_view text) {
  TargetLexicons lex;
  auto lines = split(text, '\n');
  if (lines.empty() || trim(lines[0]) != "snacs-lexicons v1")
    throw std::runtime_error("lexicon file: missing \"snacs-lexicons v1\" header");

  std::string section;
  int lineno = 1;
  for (size_t i = 1; i < lines.size(); ++i) {
    ++lineno;
    std::string& raw = lines[i];
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;
    if (raw.front() == '[') {
      section = std::string(trim(raw));
      continue;
    }
    if (section == "[whitelist]") lex.whitelist.push_back(parse_mwe_line(raw, lineno));
    else if (section == "[blacklist]") lex.blacklist.push_back(parse_mwe_line(raw, lineno));
    else if (section == "[adpositions]") lex.adpositions.insert(raw);
    else if (section == "[possessives]") lex.possessives.insert(raw);
    else if (section == "[subordinators]") lex.subordinators.insert(raw);
    else if (section == "[adverbs]") lex.adverbs.insert(raw);
    else if (section == "[infinitival_contexts]") lex.infinitival_contexts.insert(raw);
    else
      throw std::runtime_error("lexicon file line " + std::to_string(lineno) +
                               ": entry outside a known section");
  }
  std::sort(lex.whitelist.begin(), lex.whitelist.end());
  std::sort(lex.blacklist.begin(), lex.blacklist.end());
  return lex;
}

}  // namespace snacs
