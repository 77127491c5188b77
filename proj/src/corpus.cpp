#include "snacs/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "snacs/util.hpp"

namespace snacs {

namespace {

constexpr int kColumns = 14;

const char* kSpecialStrings[] = {"`i", "`d", "`c", "`$", "??"};
const char* kLexcatStrings[] = {"P", "PP", "INF.P", "POSS", "PRON.POSS", "DISC", "CCONJ", "OTHER"};

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Per-token annotation columns, held until the sentence block is complete.
struct RowAnnotation {
  int line = 0;
  int mwe_group = 0;     // 0 = none
  int mwe_position = 0;  // 1-based within the group
  std::optional<Lexcat> lexcat;
  std::optional<Construal> construal;
  std::optional<SpecialLabel> special;
  bool has_ss = false;
};

struct SentenceBuilder {
  int first_line = 0;
  std::optional<std::string> sent_id;
  std::optional<std::string> doc_id;
  std::vector<Token> tokens;
  std::vector<RowAnnotation> annotations;

  bool empty() const { return tokens.empty() && !sent_id && !doc_id; }
};

void check_pairing(const LexicalExpression& e, int line, const std::string& sent_id) {
  auto fail = [&](const std::string& msg) {
    throw ParseError(line, 13, "sentence " + sent_id + ": " + msg);
  };
  if (lexcat_is_snacs(e.lexcat)) {
    bool ok = e.construal.has_value() || (e.special && *e.special == SpecialLabel::Unk);
    if (!ok)
      fail("lexical category " + std::string(to_string(e.lexcat)) +
           " requires a construal or the ?? label");
  } else {
    bool ok = (!e.construal && !e.special) ||
              (e.special && *e.special != SpecialLabel::Unk);
    if (!ok)
      fail("lexical category " + std::string(to_string(e.lexcat)) +
           " cannot carry a construal or the ?? label");
  }
}

Sentence finalize(SentenceBuilder& b) {
  if (!b.sent_id)
    throw ParseError(b.first_line, 1, "sentence block is missing a '# sent_id =' comment");
  if (!b.doc_id)
    throw ParseError(b.first_line, 1, "sentence block is missing a '# doc_id =' comment");
  if (b.tokens.empty())
    throw ParseError(b.first_line, 1, "sentence " + *b.sent_id + ": no token rows");

  Sentence s;
  s.id = *b.sent_id;
  s.doc_id = *b.doc_id;
  s.tokens = std::move(b.tokens);

  const int n = static_cast<int>(s.tokens.size());
  for (size_t i = 0; i < s.tokens.size(); ++i) {
    const Token& t = s.tokens[i];
    int line = b.annotations[i].line;
    if (t.head < 0 || t.head > n)
      throw ParseError(line, 7, "sentence " + s.id + ": head " + std::to_string(t.head) +
                                    " out of range 0.." + std::to_string(n));
    if (t.head == t.index)
      throw ParseError(line, 7, "sentence " + s.id + ": token is its own head");
  }

  // Assemble multiword groups, then single-token expressions.
  std::map<int, std::vector<std::pair<int, int>>> groups;  // group -> (position, token index)
  for (size_t i = 0; i < b.annotations.size(); ++i) {
    const RowAnnotation& a = b.annotations[i];
    if (a.mwe_group > 0) groups[a.mwe_group].emplace_back(a.mwe_position, s.tokens[i].index);
  }

  std::vector<LexicalExpression> exprs;
  for (auto& [group, members] : groups) {
    std::sort(members.begin(), members.end());
    LexicalExpression e;
    for (size_t k = 0; k < members.size(); ++k) {
      auto [pos, idx] = members[k];
      const RowAnnotation& a = b.annotations[idx - 1];
      if (pos != static_cast<int>(k) + 1)
        throw ParseError(a.line, 12, "sentence " + s.id + ": group " + std::to_string(group) +
                                         " has non-contiguous member positions");
      if (!e.token_indices.empty() && idx <= e.token_indices.back())
        throw ParseError(a.line, 12, "sentence " + s.id + ": group " + std::to_string(group) +
                                         " member order disagrees with token order");
      e.token_indices.push_back(idx);
      if (k == 0) {
        if (!a.lexcat)
          throw ParseError(a.line, 13, "sentence " + s.id + ": first token of group " +
                                           std::to_string(group) + " is missing LEXCAT");
        e.lexcat = *a.lexcat;
        e.construal = a.construal;
        e.special = a.special;
      } else if (a.lexcat || a.has_ss) {
        throw ParseError(a.line, 13, "sentence " + s.id +
                                         ": LEXCAT/SS allowed only on the first token of group " +
                                         std::to_string(group));
      }
    }
    if (e.token_indices.size() < 2)
      throw ParseError(b.annotations[e.token_indices[0] - 1].line, 12,
                       "sentence " + s.id + ": group " + std::to_string(group) +
                           " has a single member; use a plain LEXCAT column instead");
    check_pairing(e, b.annotations[e.token_indices[0] - 1].line, s.id);
    exprs.push_back(std::move(e));
  }

  for (size_t i = 0; i < b.annotations.size(); ++i) {
    const RowAnnotation& a = b.annotations[i];
    if (a.mwe_group > 0 || !a.lexcat) continue;
    LexicalExpression e;
    e.token_indices.push_back(s.tokens[i].index);
    e.lexcat = *a.lexcat;
    e.construal = a.construal;
    e.special = a.special;
    check_pairing(e, a.line, s.id);
    exprs.push_back(std::move(e));
  }

  std::sort(exprs.begin(), exprs.end(), [](const LexicalExpression& x, const LexicalExpression& y) {
    return x.token_indices.front() < y.token_indices.front();
  });
  s.expressions = std::move(exprs);
  return s;
}

}  // namespace

std::string_view to_string(SpecialLabel s) { return kSpecialStrings[static_cast<int>(s)]; }

std::optional<SpecialLabel> special_from_string(std::string_view s) {
  for (int i = 0; i < 5; ++i)
    if (s == kSpecialStrings[i]) return static_cast<SpecialLabel>(i);
  return std::nullopt;
}

std::string_view to_string(Lexcat c) { return kLexcatStrings[static_cast<int>(c)]; }

std::optional<Lexcat> lexcat_from_string(std::string_view s) {
  for (int i = 0; i < 8; ++i)
    if (s == kLexcatStrings[i]) return static_cast<Lexcat>(i);
  return std::nullopt;
}

std::vector<Sentence> parse_corpus(std::string_view text) {
  std::vector<Sentence> sentences;
  SentenceBuilder b;

  int lineno = 0;
  for (std::string& raw : split(text, '\n')) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string& line = raw;

    if (trim(line).empty()) {
      if (!b.empty()) {
        sentences.push_back(finalize(b));
        b = SentenceBuilder{};
      }
      continue;
    }
    if (b.empty()) b.first_line = lineno;

    if (line.front() == '#') {
      auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key(trim(line.substr(1, eq - 1)));
        std::string value(trim(line.substr(eq + 1)));
        if (key == "sent_id") b.sent_id = value;
        else if (key == "doc_id") b.doc_id = value;
        // other comment keys are ignored
      }
      continue;
    }

    auto cols = split(line, '\t');
    if (cols.size() != kColumns)
      throw ParseError(lineno, static_cast<int>(cols.size()),
                       "expected " + std::to_string(kColumns) + " tab-separated columns, got " +
                           std::to_string(cols.size()));

    Token t;
    auto id = parse_int(cols[0]);
    if (!id || *id < 1) throw ParseError(lineno, 1, "bad token ID \"" + cols[0] + "\"");
    if (*id != static_cast<int>(b.tokens.size()) + 1)
      throw ParseError(lineno, 1, "token IDs must be sequential from 1; expected " +
                                      std::to_string(b.tokens.size() + 1) + ", got " + cols[0]);
    t.index = *id;
    t.form = cols[1];
    t.lemma = cols[2];
    t.upos = cols[3];
    t.xpos = cols[4];
    t.feats = cols[5];
    auto head = parse_int(cols[6]);
    if (!head) throw ParseError(lineno, 7, "bad HEAD \"" + cols[6] + "\"");
    t.head = *head;
    t.deprel = cols[7];
    t.deps = cols[8];
    t.misc = cols[9];
    t.ner = cols[10];

    RowAnnotation a;
    a.line = lineno;
    if (cols[11] != "_") {
      auto colon = cols[11].find(':');
      std::optional<int> g, p;
      if (colon != std::string::npos) {
        g = parse_int(std::string_view(cols[11]).substr(0, colon));
        p = parse_int(std::string_view(cols[11]).substr(colon + 1));
      }
      if (!g || !p || *g < 1 || *p < 1)
        throw ParseError(lineno, 12, "bad MWE column \"" + cols[11] + "\" (want <group>:<position>)");
      a.mwe_group = *g;
      a.mwe_position = *p;
    }
    if (cols[12] != "_") {
      auto lc = lexcat_from_string(cols[12]);
      if (!lc) throw ParseError(lineno, 13, "unknown lexical category \"" + cols[12] + "\"");
      a.lexcat = lc;
    }
    if (cols[13] != "_") {
      if (!a.lexcat)
        throw ParseError(lineno, 14, "SS column without a LEXCAT on the same token");
      if (auto sp = special_from_string(cols[13])) {
        a.special = sp;
      } else {
        auto parts = split(cols[13], '|');
        if (parts.size() != 2 || !parts[0].starts_with("p.") || !parts[1].starts_with("p.") ||
            parts[0].size() <= 2 || parts[1].size() <= 2)
          throw ParseError(lineno, 14,
                           "bad SS column \"" + cols[13] +
                               "\" (want p.<role>|p.<function>, a special label, or _)");
        a.construal = Construal{parts[0].substr(2), parts[1].substr(2)};
      }
      a.has_ss = true;
    }

    b.tokens.push_back(std::move(t));
    b.annotations.push_back(std::move(a));
  }
  if (!b.empty()) sentences.push_back(finalize(b));
  return sentences;
}

std::vector<Sentence> parse_corpus_file(const std::string& path) {
  return parse_corpus(read_file(path));
}

std::string serialize_sentence(const Sentence& s) {
  std::string out;
  out += "# sent_id = " + s.id + "\n";
  out += "# doc_id = " + s.doc_id + "\n";

  // Group ids number the multiword expressions in first-token order.
  struct Cell {
    std::string mwe = "_", lexcat = "_", ss = "_";
  };
  std::vector<Cell> cells(s.tokens.size());

  auto exprs = s.expressions;
  std::sort(exprs.begin(), exprs.end(), [](const LexicalExpression& x, const LexicalExpression& y) {
    return x.token_indices.front() < y.token_indices.front();
  });

  int next_group = 1;
  for (const LexicalExpression& e : exprs) {
    if (e.is_multiword()) {
      int group = next_group++;
      for (size_t k = 0; k < e.token_indices.size(); ++k)
        cells.at(e.token_indices[k] - 1).mwe =
            std::to_string(group) + ":" + std::to_string(k + 1);
    }
    Cell& first = cells.at(e.token_indices.front() - 1);
    first.lexcat = std::string(to_string(e.lexcat));
    if (e.construal)
      first.ss = "p." + e.construal->role + "|p." + e.construal->function;
    else if (e.special)
      first.ss = std::string(to_string(*e.special));
  }

  for (size_t i = 0; i < s.tokens.size(); ++i) {
    const Token& t = s.tokens[i];
    out += std::to_string(t.index);
    for (const std::string* col :
         {&t.form, &t.lemma, &t.upos, &t.xpos, &t.feats})
      out += "\t" + *col;
    out += "\t" + std::to_string(t.head);
    for (const std::string* col : {&t.deprel, &t.deps, &t.misc, &t.ner})
      out += "\t" + *col;
    out += "\t" + cells[i].mwe + "\t" + cells[i].lexcat + "\t" + cells[i].ss + "\n";
  }
  out += "\n";
  return out;
}

std::string serialize_corpus(const std::vector<Sentence>& sentences) {
  std::string out;
  for (const Sentence& s : sentences) out += serialize_sentence(s);
  return out;
}

SplitStats corpus_stats(const std::vector<Sentence>& sentences) {
  SplitStats st;
  std::set<std::string> docs, labels, roles, functions;
  std::set<std::pair<std::string, std::string>> pairs;

  for (const Sentence& s : sentences) {
    docs.insert(s.doc_id);
    ++st.sentences;
    st.tokens += static_cast<long>(s.tokens.size());
    for (const LexicalExpression& e : s.expressions) {
      if (!e.construal) continue;
      ++st.annotated_targets;
      const Construal& c = *e.construal;
      if (c.role == c.function) ++st.role_eq_function;
      switch (e.lexcat) {
        case Lexcat::P:
        case Lexcat::PP:
          ++st.p_or_pp;
          if (e.is_multiword()) ++st.multiword_units;
          break;
        case Lexcat::InfP: ++st.infinitive_to; break;
        case Lexcat::Poss: ++st.genitive_clitic; break;
        case Lexcat::PronPoss: ++st.possessive_pronoun; break;
        default: break;
      }
      labels.insert(c.role);
      labels.insert(c.function);
      roles.insert(c.role);
      functions.insert(c.function);
      pairs.emplace(c.role, c.function);
    }
  }
  st.documents = static_cast<long>(docs.size());
  st.attested_labels = static_cast<long>(labels.size());
  st.unique_roles = static_cast<long>(roles.size());
  st.unique_functions = static_cast<long>(functions.size());
  st.unique_pairs = static_cast<long>(pairs.size());
  for (const auto& [r, f] : pairs)
    if (r == f) ++st.unique_pairs_role_eq_function;
  return st;
}

std::vector<Violation> validate_corpus(const std::vector<Sentence>& sentences, const Hierarchy& h,
                                       const std::unordered_set<std::string>& role_only) {
  std::vector<Violation> out;
  for (const Sentence& s : sentences) {
    auto report = [&](const std::string& msg) { out.push_back({s.id, msg}); };
    const int n = static_cast<int>(s.tokens.size());

    for (const Token& t : s.tokens) {
      if (t.head < 0 || t.head > n)
        report("token " + std::to_string(t.index) + ": head " + std::to_string(t.head) +
               " out of range 0.." + std::to_string(n));
      else if (t.head == t.index)
        report("token " + std::to_string(t.index) + " is its own head");
    }

    std::set<int> used;
    for (const LexicalExpression& e : s.expressions) {
      std::string where = "expression at token " +
                          (e.token_indices.empty() ? std::string("?")
                                                   : std::to_string(e.token_indices.front()));
      if (e.token_indices.empty()) {
        report("expression with no tokens");
        continue;
      }
      for (size_t k = 0; k < e.token_indices.size(); ++k) {
        int idx = e.token_indices[k];
        if (idx < 1 || idx > n) report(where + ": token index " + std::to_string(idx) + " out of range");
        if (k > 0 && e.token_indices[k - 1] >= idx)
          report(where + ": token indices not strictly increasing");
        if (!used.insert(idx).second)
          report(where + ": token " + std::to_string(idx) + " belongs to more than one expression");
      }
      if (e.construal && e.special) report(where + ": both construal and special label set");
      if (lexcat_is_snacs(e.lexcat)) {
        if (!(e.construal || (e.special && *e.special == SpecialLabel::Unk)))
          report(where + ": lexcat " + std::string(to_string(e.lexcat)) +
                 " requires a construal or ??");
      } else {
        if (e.construal || (e.special && *e.special == SpecialLabel::Unk))
          report(where + ": lexcat " + std::string(to_string(e.lexcat)) +
                 " cannot carry a construal or ??");
      }
      if (e.construal) {
        ConstrualCheck check = h.validate_construal(*e.construal, role_only);
        if (!check.ok)
          report(where + ": " + check.slot + " \"" + check.offending + "\": " + check.reason);
      }
    }
  }
  return out;
}

}  // namespace snacs
