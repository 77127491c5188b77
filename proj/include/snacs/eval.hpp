#pragma once

#include <string>
#include <vector>

#include "snacs/corpus.hpp"
#include "snacs/disambig.hpp"
#include "snacs/hierarchy.hpp"
#include "snacs/targetid.hpp"

namespace snacs {

struct DimScore {
  double precision = 0, recall = 0, f1 = 0;
  long tp = 0, fp = 0, fn = 0;
  bool zero_predictions = false;
};

struct EvalReport {
  int depth = 4;
  long targets = 0;           // scored gold targets
  // Gold-ID mode: precision = recall = accuracy per dimension.
  double role_acc = 0, func_acc = 0, full_acc = 0;
  // Auto-ID mode.
  DimScore role, func, full;
};

// One prediction per gold construal-bearing target, in corpus order.
EvalReport evaluate_gold_id(const std::vector<Construal>& pred,
                            const std::vector<Sentence>& gold, const Hierarchy& h, int depth = 4);

// Predictions attached to identified target spans, one list per sentence.
struct PredictedTarget {
  TargetPrediction target;
  Construal construal;
};

EvalReport evaluate_auto_id(const std::vector<std::vector<PredictedTarget>>& pred,
                            const std::vector<Sentence>& gold, const Hierarchy& h, int depth = 4);

struct ConfusionMatrix {
  std::vector<std::string> labels;       // sorted; rows = gold, columns = predicted
  std::vector<std::vector<long>> counts;

  long total() const;
  std::string to_tsv() const;
};

enum class Dimension { Role, Function };

ConfusionMatrix confusion_matrix(const std::vector<Construal>& pred,
                                 const std::vector<Sentence>& gold, const Hierarchy& h,
                                 Dimension dim, int depth = 4);

}  // namespace snacs
