#include "snacs/disambig.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "snacs/util.hpp"

namespace snacs {

NeighborContext locate_neighbors(const Sentence& s, const TargetPrediction& target) {
  NeighborContext ctx;
  const int n = static_cast<int>(s.tokens.size());
  const Token& t0 = s.token(target.token_indices.front());
  const Token& tlast = s.token(target.token_indices.back());

  if (t0.deprel == "case" || t0.deprel == "mark") {
    // Object-headed convention: the marker attaches to its complement, whose
    // own head is the attachment site. A root object means a predicative
    // phrase with no governor ("Vernon is with Grunnings").
    if (t0.head != 0) {
      ctx.object = t0.head;
      if (s.token(t0.head).head != 0) ctx.governor = s.token(t0.head).head;
    }
  } else if (t0.xpos == "PRP$" || t0.deprel == "nmod:poss") {
    // A possessive pronoun is simultaneously the marker and the possessor.
    ctx.object = t0.index;
    if (t0.head != 0) ctx.governor = t0.head;
  } else {
    // Particles, adverbs: no object; the head is the governor.
    if (t0.head != 0) ctx.governor = t0.head;
  }

  for (int i = t0.index - 1; i >= 1; --i) {
    const Token& t = s.token(i);
    if (!ctx.prev_verb && t.upos == "VERB") ctx.prev_verb = i;
    if (!ctx.prev_noun && (t.upos == "NOUN" || t.upos == "PROPN")) ctx.prev_noun = i;
    if (!ctx.prev_adj && t.upos == "ADJ") ctx.prev_adj = i;
  }
  for (int i = tlast.index + 1; i <= n; ++i) {
    const Token& t = s.token(i);
    if (t.upos == "NOUN" || t.upos == "PROPN") {
      ctx.next_noun = i;
      break;
    }
  }
  return ctx;
}

namespace {

const char* kNounSuffixes[] = {"age", "ance", "dom",  "ence", "er",   "hood", "ion",  "ism",
                               "ist", "ity",  "ment", "ness", "or",   "ship", "sion", "tion"};
const char* kVerbSuffixes[] = {"ate", "en", "ify", "ise", "ize"};
const char* kAdjSuffixes[] = {"able", "al", "ary", "ful", "ible", "ic", "ish", "ive", "less", "ous"};
const char* kSpatialPrefixes[] = {"back", "cross", "down",  "fore",  "inter", "mid", "out",
                                  "over", "sub",   "super", "trans", "under", "up"};
const char* kSpatialSuffixes[] = {"side", "ward", "wards", "where"};
const char* kTemporalPrefixes[] = {"after", "ante", "fore", "mid", "post", "pre", "retro"};
const char* kTemporalSuffixes[] = {"day", "night", "time"};

template <size_t N>
bool has_suffix(const std::string& w, const char* (&list)[N]) {
  for (const char* a : list) {
    std::string_view suf(a);
    if (w.size() > suf.size() && std::string_view(w).ends_with(suf)) return true;
  }
  return false;
}

template <size_t N>
bool has_prefix(const std::string& w, const char* (&list)[N]) {
  for (const char* a : list) {
    std::string_view pre(a);
    if (w.size() > pre.size() && std::string_view(w).starts_with(pre)) return true;
  }
  return false;
}

// Every feature is also emitted conjoined with the lemma of the rightmost
// target word, e.g. "gov.word=works" and "gov.word=works∧tlemma=at".
struct Emitter {
  FeatureVector& fv;
  const std::string& tlemma;

  void operator()(const std::string& name) const {
    fv.emplace(name + "∧tlemma=" + tlemma, 1.0);
    fv.emplace(name, 1.0);
  }
};

void token_features(const Emitter& emit, const std::string& p, const Token& t,
                    const LexicalResourceBundle& res) {
  std::string lower = to_lower(t.form);
  emit(p + ".word=" + lower);
  if (!t.form.empty() && std::isupper(static_cast<unsigned char>(t.form[0]))) emit(p + ".cap");
  emit(p + ".upos=" + t.upos);
  emit(p + ".xpos=" + t.xpos);

  if (res.has_wordnet()) {
    WordnetEntry wn = res.lookup_wordnet(t.lemma, t.upos);
    if (wn.present) {
      emit(p + ".wn");
      emit(p + ".synset.first=" + wn.first_synset);
      for (const std::string& id : wn.synsets) emit(p + ".synset=" + id);
      emit(p + ".wnlemma=" + wn.lemma);
      if (!wn.lexfile.empty()) emit(p + ".lexfile=" + wn.lexfile);
      for (const std::string& id : wn.part_holonyms) emit(p + ".holo.part=" + id);
      for (const std::string& id : wn.member_holonyms) emit(p + ".holo.member=" + id);
      for (const std::string& id : wn.substance_holonyms) emit(p + ".holo.substance=" + id);
    }
  }
  if (res.has_roget())
    for (const std::string& d : res.lookup_roget(t.lemma)) emit(p + ".roget=" + d);

  if (t.ner != "_" && !t.ner.empty()) emit(p + ".ner=" + t.ner);

  if (lower.size() >= 2) {
    emit(p + ".pre2=" + lower.substr(0, 2));
    emit(p + ".suf2=" + lower.substr(lower.size() - 2));
  }
  if (lower.size() >= 3) {
    emit(p + ".pre3=" + lower.substr(0, 3));
    emit(p + ".suf3=" + lower.substr(lower.size() - 3));
  }

  if (has_suffix(lower, kNounSuffixes)) emit(p + ".affix.noun");
  if (has_suffix(lower, kVerbSuffixes)) emit(p + ".affix.verb");
  if (has_suffix(lower, kAdjSuffixes)) emit(p + ".affix.adj");
  if (has_prefix(lower, kSpatialPrefixes) || has_suffix(lower, kSpatialSuffixes))
    emit(p + ".affix.spatial");
  if (has_prefix(lower, kTemporalPrefixes) || has_suffix(lower, kTemporalSuffixes))
    emit(p + ".affix.temporal");
  if (lower.size() > 3 && std::string_view(lower).ends_with("ing")) emit(p + ".affix.gerund");
}

}  // namespace

FeatureVector extract_features(const Sentence& sentence, const TargetPrediction& target,
                               const NeighborContext& ctx, const LexicalResourceBundle& res) {
  FeatureVector fv;
  const std::string& tlemma = sentence.token(target.token_indices.back()).lemma;
  Emitter emit{fv, tlemma};

  token_features(emit, "tok", sentence.token(target.token_indices.front()), res);
  const std::pair<const char*, const std::optional<int>*> sources[] = {
      {"gov", &ctx.governor},   {"obj", &ctx.object},   {"pv", &ctx.prev_verb},
      {"pn", &ctx.prev_noun},   {"pa", &ctx.prev_adj},  {"nn", &ctx.next_noun},
  };
  for (const auto& [prefix, slot] : sources)
    if (*slot) token_features(emit, prefix, sentence.token(**slot), res);

  fv.emplace("tlemma=" + tlemma, 1.0);
  fv.emplace("bias", 1.0);
  return fv;
}

std::vector<GoldTarget> collect_gold_targets(const std::vector<Sentence>& corpus) {
  std::vector<GoldTarget> out;
  for (size_t i = 0; i < corpus.size(); ++i)
    for (const LexicalExpression& e : corpus[i].expressions)
      if (e.construal)
        out.push_back({static_cast<int>(i), {e.token_indices}, *e.construal, e.lexcat});
  return out;
}

namespace {

std::string lemma_key(const Sentence& s, const std::vector<int>& indices) {
  std::vector<std::string> lemmas;
  for (int idx : indices) lemmas.push_back(s.token(idx).lemma);
  return join(lemmas, " ");
}

using PairCounts = std::map<std::pair<std::string, std::string>, long>;

Construal argmax_pair(const PairCounts& counts) {
  const std::pair<std::string, std::string>* best = nullptr;
  long best_count = -1;
  for (const auto& [pair, count] : counts)
    if (count > best_count) {  // map order makes the first maximum the smallest pair
      best = &pair;
      best_count = count;
    }
  return {best->first, best->second};
}

}  // namespace

MostFrequentTable train_mfs(const std::vector<Sentence>& train) {
  std::map<std::string, PairCounts> per_lemma;
  PairCounts global;
  for (const Sentence& s : train) {
    for (const LexicalExpression& e : s.expressions) {
      if (!e.construal) continue;
      std::pair<std::string, std::string> pair{e.construal->role, e.construal->function};
      ++per_lemma[lemma_key(s, e.token_indices)][pair];
      ++global[pair];
    }
  }
  if (global.empty()) throw ModelError("no construal-bearing targets in training data");

  MostFrequentTable table;
  table.fallback = argmax_pair(global);
  for (const auto& [lemma, counts] : per_lemma) table.by_lemma.emplace(lemma, argmax_pair(counts));
  return table;
}

Construal predict_mfs(const MostFrequentTable& table, const Sentence& sentence,
                      const TargetPrediction& target) {
  auto it = table.by_lemma.find(lemma_key(sentence, target.token_indices));
  return it == table.by_lemma.end() ? table.fallback : it->second;
}

LinearModel LinearModel::train(const std::vector<FeatureVector>& examples,
                               const std::vector<std::string>& labels,
                               const TrainConfig& config) {
  if (examples.empty() || examples.size() != labels.size())
    throw ModelError("training requires a nonempty, aligned example/label list");

  LinearModel m;
  m.config_ = config;

  std::set<std::string> label_set(labels.begin(), labels.end());
  m.labels_.assign(label_set.begin(), label_set.end());
  std::set<std::string> feature_set;
  for (const FeatureVector& x : examples)
    for (const auto& [name, v] : x) feature_set.insert(name);
  m.feature_names_.assign(feature_set.begin(), feature_set.end());
  for (size_t j = 0; j < m.feature_names_.size(); ++j)
    m.feature_index_.emplace(m.feature_names_[j], static_cast<int>(j));

  const size_t n = examples.size();
  std::vector<std::vector<int>> xs(n);
  for (size_t i = 0; i < n; ++i) {
    for (const auto& [name, v] : examples[i]) xs[i].push_back(m.feature_index_.at(name));
    std::sort(xs[i].begin(), xs[i].end());
  }

  const double C = config.C;
  m.objective_.assign(static_cast<size_t>(config.epochs), 0.0);
  m.weights_.assign(m.labels_.size(), std::vector<double>(m.feature_names_.size(), 0.0));

  // Dual coordinate descent per one-vs-all problem: alpha_i in [0, C],
  // Q_ii = x_i . x_i (= nnz for indicator features).
  for (size_t l = 0; l < m.labels_.size(); ++l) {
    std::vector<double>& w = m.weights_[l];
    std::vector<double> alpha(n, 0.0);
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) y[i] = labels[i] == m.labels_[l] ? 1.0 : -1.0;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      for (size_t i = 0; i < n; ++i) {
        double qii = static_cast<double>(xs[i].size());
        if (qii == 0) continue;
        double wx = 0;
        for (int j : xs[i]) wx += w[static_cast<size_t>(j)];
        double g = y[i] * wx - 1.0;
        if ((alpha[i] <= 0 && g >= 0) || (alpha[i] >= C && g <= 0)) continue;
        double next = std::min(std::max(alpha[i] - g / qii, 0.0), C);
        double delta = (next - alpha[i]) * y[i];
        if (delta != 0)
          for (int j : xs[i]) w[static_cast<size_t>(j)] += delta;
        alpha[i] = next;
      }
      double norm = 0;
      for (double wj : w) norm += wj * wj;
      double asum = 0;
      for (double a : alpha) asum += a;
      m.objective_[static_cast<size_t>(epoch)] += 0.5 * norm - asum;
    }
  }
  return m;
}

double LinearModel::score(int label, const FeatureVector& x) const {
  double s = 0;
  const std::vector<double>& w = weights_.at(static_cast<size_t>(label));
  for (const auto& [name, v] : x) {
    auto it = feature_index_.find(name);
    if (it != feature_index_.end()) s += w[static_cast<size_t>(it->second)] * v;
  }
  return s;
}

std::map<std::string, double> LinearModel::scores(const FeatureVector& x) const {
  std::map<std::string, double> out;
  for (size_t l = 0; l < labels_.size(); ++l) out.emplace(labels_[l], score(static_cast<int>(l), x));
  return out;
}

std::string LinearModel::predict(const FeatureVector& x) const {
  if (labels_.empty()) throw ModelError("predict on an untrained model");
  size_t best = 0;
  double best_score = score(0, x);
  for (size_t l = 1; l < labels_.size(); ++l) {
    double sc = score(static_cast<int>(l), x);
    if (sc > best_score) {  // ties keep the lexicographically smaller label
      best = l;
      best_score = sc;
    }
  }
  return labels_[best];
}

namespace {

std::string hexfloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_double(const std::string& s, const char* what) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw ModelError(std::string("corrupt model file: bad ") + what + " \"" + s + "\"");
  return v;
}

long parse_count(const std::string& s, const char* what) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos == s.size() && v >= 0) return v;
  } catch (...) {
  }
  throw ModelError(std::string("corrupt model file: bad ") + what + " \"" + s + "\"");
}

}  // namespace

std::string LinearModel::serialize() const {
  std::string out = "snacs-model v1\n";
  char cfg[128];
  std::snprintf(cfg, sizeof cfg, "config C=%.17g epochs=%d seed=%u\n", config_.C, config_.epochs,
                config_.seed);
  out += cfg;
  out += "labels " + std::to_string(labels_.size()) + "\n";
  for (const std::string& l : labels_) out += l + "\n";
  out += "features " + std::to_string(feature_names_.size()) + "\n";
  for (const std::string& f : feature_names_) out += f + "\n";
  out += "weights\n";
  for (const std::vector<double>& w : weights_) {
    std::vector<std::string> cells;
    for (double v : w) cells.push_back(hexfloat(v));
    out += join(cells, " ") + "\n";
  }
  out += "objective " + std::to_string(objective_.size()) + "\n";
  {
    std::vector<std::string> cells;
    for (double v : objective_) cells.push_back(hexfloat(v));
    out += join(cells, " ") + "\n";
  }
  out += "end\n";
  return out;
}

LinearModel LinearModel::deserialize(std::string_view text) {
  auto lines = split(text, '\n');
  for (std::string& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();

  size_t at = 0;
  auto next = [&]() -> const std::string& {
    if (at >= lines.size()) throw ModelError("corrupt model file: unexpected end of file");
    return lines[at++];
  };

  if (next() != "snacs-model v1")
    throw ModelError("unsupported model file: expected \"snacs-model v1\" header");

  LinearModel m;
  {
    const std::string& cfg = next();
    unsigned seed = 0;
    if (std::sscanf(cfg.c_str(), "config C=%lf epochs=%d seed=%u", &m.config_.C,
                    &m.config_.epochs, &seed) != 3)
      throw ModelError("corrupt model file: bad config line \"" + cfg + "\"");
    m.config_.seed = seed;
  }
  {
    const std::string& hdr = next();
    if (!hdr.starts_with("labels ")) throw ModelError("corrupt model file: expected labels section");
    long n = parse_count(hdr.substr(7), "label count");
    for (long i = 0; i < n; ++i) m.labels_.push_back(next());
  }
  {
    const std::string& hdr = next();
    if (!hdr.starts_with("features "))
      throw ModelError("corrupt model file: expected features section");
    long n = parse_count(hdr.substr(9), "feature count");
    for (long i = 0; i < n; ++i) m.feature_names_.push_back(next());
    for (size_t j = 0; j < m.feature_names_.size(); ++j)
      m.feature_index_.emplace(m.feature_names_[j], static_cast<int>(j));
  }
  if (next() != "weights") throw ModelError("corrupt model file: expected weights section");
  for (size_t l = 0; l < m.labels_.size(); ++l) {
    std::vector<double> row;
    for (const std::string& cell : split(next(), ' '))
      if (!cell.empty()) row.push_back(parse_double(cell, "weight"));
    if (row.size() != m.feature_names_.size())
      throw ModelError("corrupt model file: weight row length " + std::to_string(row.size()) +
                       " != feature count " + std::to_string(m.feature_names_.size()));
    m.weights_.push_back(std::move(row));
  }
  {
    const std::string& hdr = next();
    if (!hdr.starts_with("objective "))
      throw ModelError("corrupt model file: expected objective section");
    long n = parse_count(hdr.substr(10), "objective count");
    for (const std::string& cell : split(next(), ' '))
      if (!cell.empty()) m.objective_.push_back(parse_double(cell, "objective value"));
    if (static_cast<long>(m.objective_.size()) != n)
      throw ModelError("corrupt model file: objective length mismatch");
  }
  if (next() != "end") throw ModelError("corrupt model file: missing end marker");
  return m;
}

void LinearModel::save(const std::string& path) const { write_file(path, serialize()); }

LinearModel LinearModel::load(const std::string& path) { return deserialize(read_file(path)); }

ModelPair train_linear(const std::vector<Sentence>& train, const LexicalResourceBundle& res,
                       const TrainConfig& config) {
  std::vector<GoldTarget> targets = collect_gold_targets(train);
  if (targets.empty()) throw ModelError("no construal-bearing targets in training data");

  std::vector<FeatureVector> xs;
  std::vector<std::string> roles, functions;
  for (const GoldTarget& t : targets) {
    const Sentence& s = train[static_cast<size_t>(t.sentence)];
    xs.push_back(extract_features(s, t.target, locate_neighbors(s, t.target), res));
    roles.push_back(t.construal.role);
    functions.push_back(t.construal.function);
  }
  return {LinearModel::train(xs, roles, config), LinearModel::train(xs, functions, config)};
}

ConstrualPrediction predict_linear(const ModelPair& models, const Sentence& sentence,
                                   const TargetPrediction& target,
                                   const LexicalResourceBundle& res) {
  FeatureVector x = extract_features(sentence, target, locate_neighbors(sentence, target), res);
  ConstrualPrediction out;
  out.construal = {models.role.predict(x), models.function.predict(x)};
  out.role_scores = models.role.scores(x);
  out.function_scores = models.function.scores(x);
  return out;
}

std::string serialize_mfs(const MostFrequentTable& table) {
  std::string out = "snacs-mfs v1\n";
  out += "fallback\t" + table.fallback.role + "\t" + table.fallback.function + "\n";
  for (const auto& [lemma, c] : table.by_lemma)
    out += lemma + "\t" + c.role + "\t" + c.function + "\n";
  return out;
}

MostFrequentTable parse_mfs(std::string_view text) {
  auto lines = split(text, '\n');
  for (std::string& l : lines)
    if (!l.empty() && l.back() == '\r') l.pop_back();
  if (lines.empty() || lines[0] != "snacs-mfs v1")
    throw ModelError("unsupported frequency table: expected \"snacs-mfs v1\" header");
  if (lines.size() < 2) throw ModelError("corrupt frequency table: missing fallback line");

  MostFrequentTable table;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    auto cols = split(lines[i], '\t');
    if (cols.size() != 3)
      throw ModelError("corrupt frequency table: line " + std::to_string(i + 1) +
                       " is not <lemma>\\t<role>\\t<function>");
    if (i == 1) table.fallback = {cols[1], cols[2]};
    else table.by_lemma.emplace(cols[0], Construal{cols[1], cols[2]});
  }
  return table;
}

}  // namespace snacs
