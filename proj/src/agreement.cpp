#include "snacs/agreement.hpp"

#include <algorithm>
#include <set>

#include "snacs/util.hpp"

namespace snacs {

namespace {

std::string label_of(const Construal& c, Dimension dim) {
  return dim == Dimension::Role ? c.role : c.function;
}

std::string item_where(const AgreementItem& it) {
  std::vector<std::string> idx;
  for (int i : it.token_indices) idx.push_back(std::to_string(i));
  return it.sentence_id + " tokens " + join(idx, ",");
}

}  // namespace

JoinResult join_annotations(const std::vector<std::vector<Sentence>>& corpora,
                            const std::vector<std::string>& annotator_names) {
  if (corpora.size() < 2) throw std::runtime_error("agreement needs at least 2 annotators");
  if (corpora.size() != annotator_names.size())
    throw std::runtime_error("annotator name count does not match corpus count");
  const size_t N = corpora.size();

  using Key = std::pair<std::string, std::vector<int>>;
  std::map<Key, std::vector<std::optional<std::optional<Construal>>>> by_key;
  // outer optional: whether the annotator has this target at all

  std::map<std::string, std::set<size_t>> sentence_seen;
  for (size_t a = 0; a < N; ++a) {
    for (const Sentence& s : corpora[a]) {
      sentence_seen[s.id].insert(a);
      for (const LexicalExpression& e : s.expressions) {
        auto& slot = by_key[{s.id, e.token_indices}];
        slot.resize(N);
        slot[a] = e.construal ? std::optional<Construal>(*e.construal)
                              : std::optional<Construal>(std::nullopt);
      }
    }
  }

  JoinResult out;
  out.table.annotators = annotator_names;
  for (const auto& [sid, seen] : sentence_seen)
    if (seen.size() != N)
      out.misalignments.push_back("sentence " + sid + " present for only " +
                                  std::to_string(seen.size()) + "/" + std::to_string(N) +
                                  " annotators");

  for (const auto& [key, slots] : by_key) {
    AgreementItem item{key.first, key.second, {}};
    std::vector<std::string> missing;
    for (size_t a = 0; a < N; ++a) {
      if (slots[a]) item.annotations.push_back(*slots[a]);
      else missing.push_back(annotator_names[a]);
    }
    if (missing.empty()) {
      out.table.items.push_back(std::move(item));
    } else if (missing.size() < N) {
      out.misalignments.push_back("target " + item_where(item) + " missing for " +
                                  join(missing, ","));
    }
  }
  return out;
}

AgreementTable filter_semantic(const AgreementTable& table) {
  AgreementTable out;
  out.annotators = table.annotators;
  for (const AgreementItem& item : table.items) {
    bool all = true;
    for (const auto& a : item.annotations) all = all && a.has_value();
    if (all) out.items.push_back(item);
  }
  return out;
}

PairwiseAgreement pairwise_agreement(const AgreementTable& table, Dimension dim,
                                     const Hierarchy& h, int depth) {
  const size_t N = table.annotators.size();
  if (N < 2) throw std::runtime_error("pairwise agreement needs at least 2 annotators");

  PairwiseAgreement out;
  out.matrix.assign(N, std::vector<double>(N, 100.0));
  double sum = 0;
  long pairs = 0;
  for (size_t a = 0; a < N; ++a) {
    for (size_t b = a + 1; b < N; ++b) {
      long both = 0, agree = 0;
      for (const AgreementItem& item : table.items) {
        if (!item.annotations[a] || !item.annotations[b]) continue;
        ++both;
        agree += h.coarsen_label(label_of(*item.annotations[a], dim), depth) ==
                 h.coarsen_label(label_of(*item.annotations[b], dim), depth);
      }
      double pct = both == 0 ? 0.0 : 100.0 * agree / static_cast<double>(both);
      out.matrix[a][b] = out.matrix[b][a] = pct;
      sum += pct;
      ++pairs;
    }
  }
  out.average = pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
  return out;
}

double cohen_kappa(const AgreementTable& table, int a, int b, Dimension dim, const Hierarchy& h,
                   int depth) {
  const int N = static_cast<int>(table.annotators.size());
  if (a < 0 || b < 0 || a >= N || b >= N || a == b)
    throw std::runtime_error("cohen_kappa: bad annotator pair");

  std::map<std::string, long> ma, mb;
  long both = 0, agree = 0;
  for (const AgreementItem& item : table.items) {
    const auto& ca = item.annotations[static_cast<size_t>(a)];
    const auto& cb = item.annotations[static_cast<size_t>(b)];
    if (!ca || !cb) continue;
    std::string la = h.coarsen_label(label_of(*ca, dim), depth);
    std::string lb = h.coarsen_label(label_of(*cb, dim), depth);
    ++both;
    agree += la == lb;
    ++ma[la];
    ++mb[lb];
  }
  if (both == 0) return 0.0;

  double po = agree / static_cast<double>(both);
  double pe = 0;
  for (const auto& [label, ca] : ma) {
    auto it = mb.find(label);
    if (it != mb.end())
      pe += (ca / static_cast<double>(both)) * (it->second / static_cast<double>(both));
  }
  if (1.0 - pe <= 0.0) return 1.0;  // both annotators constant and equal
  return (po - pe) / (1.0 - pe);
}

double average_pairwise_kappa(const AgreementTable& table, Dimension dim, const Hierarchy& h,
                              int depth) {
  const int N = static_cast<int>(table.annotators.size());
  double sum = 0;
  long pairs = 0;
  for (int a = 0; a < N; ++a)
    for (int b = a + 1; b < N; ++b) {
      sum += cohen_kappa(table, a, b, dim, h, depth);
      ++pairs;
    }
  return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

std::vector<double> plurality_agreement(const AgreementTable& table, Dimension dim,
                                        const Hierarchy& h, int depth) {
  const size_t N = table.annotators.size();
  std::vector<long> agree(N, 0);
  for (const AgreementItem& item : table.items) {
    std::map<std::string, long> votes;
    for (const auto& a : item.annotations)
      if (a) ++votes[h.coarsen_label(label_of(*a, dim), depth)];

    // unique most-chosen label, if any
    std::string winner;
    long best = 0;
    bool unique = false;
    for (const auto& [label, count] : votes) {
      if (count > best) {
        best = count;
        winner = label;
        unique = true;
      } else if (count == best) {
        unique = false;
      }
    }
    if (!unique) continue;  // counted as disagreement for everyone
    for (size_t a = 0; a < N; ++a)
      if (item.annotations[a] &&
          h.coarsen_label(label_of(*item.annotations[a], dim), depth) == winner)
        ++agree[a];
  }
  std::vector<double> out(N, 0.0);
  if (!table.items.empty())
    for (size_t a = 0; a < N; ++a)
      out[a] = 100.0 * agree[a] / static_cast<double>(table.items.size());
  return out;
}

ConfusionMatrix pair_confusions(const AgreementTable& table, Dimension dim, const Hierarchy& h,
                                int depth) {
  const size_t N = table.annotators.size();
  std::set<std::string> label_set;
  std::map<std::pair<std::string, std::string>, long> cells;
  for (const AgreementItem& item : table.items) {
    for (size_t a = 0; a < N; ++a) {
      for (size_t b = a + 1; b < N; ++b) {
        if (!item.annotations[a] || !item.annotations[b]) continue;
        std::string la = h.coarsen_label(label_of(*item.annotations[a], dim), depth);
        std::string lb = h.coarsen_label(label_of(*item.annotations[b], dim), depth);
        if (lb < la) std::swap(la, lb);  // unordered pair, canonical order
        label_set.insert(la);
        label_set.insert(lb);
        ++cells[{la, lb}];
      }
    }
  }

  ConfusionMatrix m;
  m.labels.assign(label_set.begin(), label_set.end());
  std::map<std::string, size_t> at;
  for (size_t i = 0; i < m.labels.size(); ++i) at[m.labels[i]] = i;
  m.counts.assign(m.labels.size(), std::vector<long>(m.labels.size(), 0));
  // Unordered pairs live in the upper triangle so that the matrix total is
  // exactly items * N(N-1)/2 on an all-construal table.
  for (const auto& [pair, count] : cells) m.counts[at[pair.first]][at[pair.second]] += count;
  return m;
}

}  // namespace snacs
