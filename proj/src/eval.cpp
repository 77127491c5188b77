#include "snacs/eval.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace snacs {

namespace {

std::string coarse(const Hierarchy& h, const std::string& label, int depth) {
  return h.coarsen_label(label, depth);
}

void finish(DimScore& d) {
  d.zero_predictions = d.tp + d.fp == 0;
  d.precision = d.zero_predictions ? 0.0 : 100.0 * d.tp / static_cast<double>(d.tp + d.fp);
  d.recall = d.tp + d.fn == 0 ? 0.0 : 100.0 * d.tp / static_cast<double>(d.tp + d.fn);
  d.f1 = d.precision + d.recall == 0 ? 0.0
                                     : 2 * d.precision * d.recall / (d.precision + d.recall);
}

bool overlaps(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  return false;
}

}  // namespace

EvalReport evaluate_gold_id(const std::vector<Construal>& pred,
                            const std::vector<Sentence>& gold, const Hierarchy& h, int depth) {
  std::vector<GoldTarget> targets = collect_gold_targets(gold);
  if (pred.size() != targets.size())
    throw std::runtime_error("evaluate_gold_id: " + std::to_string(pred.size()) +
                             " predictions vs " + std::to_string(targets.size()) +
                             " gold targets");
  EvalReport r;
  r.depth = depth;
  r.targets = static_cast<long>(targets.size());
  long role_ok = 0, func_ok = 0, full_ok = 0;
  for (size_t i = 0; i < targets.size(); ++i) {
    bool role_match = coarse(h, pred[i].role, depth) == coarse(h, targets[i].construal.role, depth);
    bool func_match =
        coarse(h, pred[i].function, depth) == coarse(h, targets[i].construal.function, depth);
    role_ok += role_match;
    func_ok += func_match;
    full_ok += role_match && func_match;
  }
  if (r.targets > 0) {
    r.role_acc = 100.0 * role_ok / static_cast<double>(r.targets);
    r.func_acc = 100.0 * func_ok / static_cast<double>(r.targets);
    r.full_acc = 100.0 * full_ok / static_cast<double>(r.targets);
  }
  return r;
}

EvalReport evaluate_auto_id(const std::vector<std::vector<PredictedTarget>>& pred,
                            const std::vector<Sentence>& gold, const Hierarchy& h, int depth) {
  if (pred.size() != gold.size())
    throw std::runtime_error("evaluate_auto_id: " + std::to_string(pred.size()) +
                             " prediction sentences vs " + std::to_string(gold.size()) +
                             " gold sentences");
  EvalReport r;
  r.depth = depth;

  for (size_t i = 0; i < gold.size(); ++i) {
    struct GoldUnit {
      const std::vector<int>* indices;
      const Construal* construal;
      bool role_hit = false, func_hit = false, full_hit = false;
    };
    std::vector<GoldUnit> positives;
    std::vector<const std::vector<int>*> unk;
    for (const LexicalExpression& e : gold[i].expressions) {
      if (e.construal) positives.push_back({&e.token_indices, &*e.construal});
      else if (e.special && *e.special == SpecialLabel::Unk) unk.push_back(&e.token_indices);
    }
    r.targets += static_cast<long>(positives.size());

    for (const PredictedTarget& p : pred[i]) {
      bool skip = false;
      for (const auto* u : unk)
        if (overlaps(p.target.token_indices, *u)) skip = true;
      if (skip) continue;

      GoldUnit* match = nullptr;
      for (GoldUnit& g : positives)
        if (p.target.token_indices == *g.indices) match = &g;

      bool role_match = false, func_match = false;
      if (match) {
        role_match = coarse(h, p.construal.role, depth) == coarse(h, match->construal->role, depth);
        func_match =
            coarse(h, p.construal.function, depth) == coarse(h, match->construal->function, depth);
      }
      if (role_match) {
        ++r.role.tp;
        match->role_hit = true;
      } else {
        ++r.role.fp;
      }
      if (func_match) {
        ++r.func.tp;
        match->func_hit = true;
      } else {
        ++r.func.fp;
      }
      if (role_match && func_match) {
        ++r.full.tp;
        match->full_hit = true;
      } else {
        ++r.full.fp;
      }
    }
    for (const GoldUnit& g : positives) {
      r.role.fn += !g.role_hit;
      r.func.fn += !g.func_hit;
      r.full.fn += !g.full_hit;
    }
  }
  finish(r.role);
  finish(r.func);
  finish(r.full);
  return r;
}

long ConfusionMatrix::total() const {
  long sum = 0;
  for (const auto& row : counts)
    for (long c : row) sum += c;
  return sum;
}

std::string ConfusionMatrix::to_tsv() const {
  std::string out = "gold\\pred";
  for (const std::string& l : labels) out += "\t" + l;
  out += "\n";
  for (size_t i = 0; i < labels.size(); ++i) {
    out += labels[i];
    for (long c : counts[i]) out += "\t" + std::to_string(c);
    out += "\n";
  }
  return out;
}

ConfusionMatrix confusion_matrix(const std::vector<Construal>& pred,
                                 const std::vector<Sentence>& gold, const Hierarchy& h,
                                 Dimension dim, int depth) {
  std::vector<GoldTarget> targets = collect_gold_targets(gold);
  if (pred.size() != targets.size())
    throw std::runtime_error("confusion_matrix: prediction/target count mismatch");

  auto pick = [&](const Construal& c) {
    return coarse(h, dim == Dimension::Role ? c.role : c.function, depth);
  };

  std::set<std::string> label_set;
  for (size_t i = 0; i < targets.size(); ++i) {
    label_set.insert(pick(targets[i].construal));
    label_set.insert(pick(pred[i]));
  }

  ConfusionMatrix m;
  m.labels.assign(label_set.begin(), label_set.end());
  std::map<std::string, size_t> at;
  for (size_t i = 0; i < m.labels.size(); ++i) at[m.labels[i]] = i;
  m.counts.assign(m.labels.size(), std::vector<long>(m.labels.size(), 0));
  for (size_t i = 0; i < targets.size(); ++i)
    ++m.counts[at[pick(targets[i].construal)]][at[pick(pred[i])]];
  return m;
}

}  // namespace snacs
