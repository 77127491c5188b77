#include "snacs/lexres.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>

#include "snacs/util.hpp"

namespace snacs {

namespace {

// Standard lexicographer file names, indexed by lex_filenum.
const char* kLexnames[] = {
    "adj.all",           "adj.pert",         "adv.all",          "noun.Tops",
    "noun.act",          "noun.animal",      "noun.artifact",    "noun.attribute",
    "noun.body",         "noun.cognition",   "noun.communication", "noun.event",
    "noun.feeling",      "noun.food",        "noun.group",       "noun.location",
    "noun.motive",       "noun.object",      "noun.person",      "noun.phenomenon",
    "noun.plant",        "noun.possession",  "noun.process",     "noun.quantity",
    "noun.relation",     "noun.shape",       "noun.state",       "noun.substance",
    "noun.time",         "verb.body",        "verb.change",      "verb.cognition",
    "verb.communication", "verb.competition", "verb.consumption", "verb.contact",
    "verb.creation",     "verb.emotion",     "verb.motion",      "verb.perception",
    "verb.possession",   "verb.social",      "verb.stative",     "verb.weather",
    "adj.ppl",
};

constexpr char kPosLetters[] = {'n', 'v', 'a', 'r'};
const char* kPosFiles[] = {"noun", "verb", "adj", "adv"};

std::vector<std::string> fields(std::string_view line) {
  std::vector<std::string> out;
  for (std::string& f : split(line, ' '))
    if (!f.empty()) out.push_back(std::move(f));
  return out;
}

int parse_num(const std::string& s, int base, const std::string& where) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ResourceError(where + ": bad number \"" + s + "\"");
  return value;
}

std::string normalize(std::string_view word) {
  std::string w = to_lower(word);
  std::replace(w.begin(), w.end(), ' ', '_');
  return w;
}

}  // namespace

std::string_view wordnet_lexfile_name(int lex_filenum) {
  if (lex_filenum < 0 || lex_filenum >= static_cast<int>(std::size(kLexnames))) return "";
  return kLexnames[lex_filenum];
}

Wordnet Wordnet::load(const std::string& dir) {
  namespace fs = std::filesystem;
  Wordnet wn;
  bool any = false;
  for (int p = 0; p < 4; ++p) {
    char pos = kPosLetters[p];
    std::string index_path = dir + "/index." + kPosFiles[p];
    std::string data_path = dir + "/data." + kPosFiles[p];
    if (!fs::exists(index_path) || !fs::exists(data_path)) continue;
    any = true;

    auto& data = wn.data_[pos];
    int lineno = 0;
    for (const std::string& line : split(read_file(data_path), '\n')) {
      ++lineno;
      if (line.empty() || line.front() == ' ') continue;  // license header
      std::string where = data_path + ":" + std::to_string(lineno);
      auto f = fields(line);
      if (f.size() < 6) throw ResourceError(where + ": truncated synset line");
      Synset syn;
      syn.lexfile = parse_num(f[1], 10, where);
      int w_cnt = parse_num(f[3], 16, where);
      size_t at = 4 + 2 * static_cast<size_t>(w_cnt);
      if (at >= f.size()) throw ResourceError(where + ": word list overruns line");
      int p_cnt = parse_num(f[at], 10, where);
      ++at;
      for (int i = 0; i < p_cnt; ++i, at += 4) {
        if (at + 3 >= f.size() || f[at + 1].size() != 8)
          throw ResourceError(where + ": pointer list overruns line");
        const std::string& sym = f[at];
        std::string target = f[at + 2] + f[at + 1];  // pos letter + offset
        if (sym == "#p") syn.part_holonyms.push_back(target);
        else if (sym == "#m") syn.member_holonyms.push_back(target);
        else if (sym == "#s") syn.substance_holonyms.push_back(target);
      }
      std::string id;
      id += f[2] == "s" ? 'a' : f[2][0];  // satellites filed under adj
      id += f[0];
      data.emplace(std::move(id), std::move(syn));
    }

    auto& index = wn.index_[pos];
    lineno = 0;
    for (const std::string& line : split(read_file(index_path), '\n')) {
      ++lineno;
      if (line.empty() || line.front() == ' ') continue;
      std::string where = index_path + ":" + std::to_string(lineno);
      auto f = fields(line);
      if (f.size() < 5) throw ResourceError(where + ": truncated index line");
      int synset_cnt = parse_num(f[2], 10, where);
      if (synset_cnt < 1 || f.size() < 4 + static_cast<size_t>(synset_cnt))
        throw ResourceError(where + ": synset count disagrees with line");
      std::vector<std::string> ids;
      for (size_t i = f.size() - static_cast<size_t>(synset_cnt); i < f.size(); ++i) {
        if (f[i].size() != 8) throw ResourceError(where + ": bad synset offset \"" + f[i] + "\"");
        std::string id;
        id += f[1] == "s" ? 'a' : f[1][0];
        id += f[i];
        if (!data.count(id)) throw ResourceError(where + ": offset " + f[i] + " missing from data file");
        ids.push_back(std::move(id));
      }
      index.emplace(f[0], std::move(ids));
    }
  }
  if (!any) throw ResourceError("no WordNet index/data files under " + dir);
  return wn;
}

WordnetEntry Wordnet::lookup_pos(const std::string& word, char pos) const {
  WordnetEntry e;
  auto idx = index_.find(pos);
  if (idx == index_.end()) return e;
  auto hit = idx->second.find(word);
  if (hit == idx->second.end()) return e;

  e.present = true;
  e.lemma = word;
  e.synsets = hit->second;
  e.first_synset = e.synsets.front();
  const Synset& first = data_.at(pos).at(e.first_synset);
  e.lexfile = std::string(wordnet_lexfile_name(first.lexfile));
  e.part_holonyms = first.part_holonyms;
  e.member_holonyms = first.member_holonyms;
  e.substance_holonyms = first.substance_holonyms;
  return e;
}

WordnetEntry Wordnet::lookup(std::string_view word, std::string_view pos_hint) const {
  std::string w = normalize(word);
  if (w.empty()) return {};

  std::vector<char> order;
  if (pos_hint == "NOUN" || pos_hint == "PROPN") order = {'n'};
  else if (pos_hint == "VERB" || pos_hint == "AUX") order = {'v'};
  else if (pos_hint == "ADJ") order = {'a'};
  else if (pos_hint == "ADV") order = {'r'};
  else order = {'n', 'v', 'a', 'r'};

  for (char pos : order) {
    WordnetEntry e = lookup_pos(w, pos);
    if (e.present) return e;
  }
  return {};
}

Roget Roget::load(const std::string& path) {
  Roget r;
  int lineno = 0;
  for (const std::string& raw : split(read_file(path), '\n')) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw ResourceError(path + ":" + std::to_string(lineno) +
                          ": expected <word><TAB><division>");
    std::string word = normalize(trim(line.substr(0, tab)));
    std::string division(trim(line.substr(tab + 1)));
    if (word.empty() || division.empty())
      throw ResourceError(path + ":" + std::to_string(lineno) + ": empty word or division");
    r.divisions_[word].insert(division);
  }
  return r;
}

std::set<std::string> Roget::lookup(std::string_view word) const {
  auto it = divisions_.find(normalize(word));
  return it == divisions_.end() ? std::set<std::string>{} : it->second;
}

}  // namespace snacs
