#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "snacs/corpus.hpp"
#include "snacs/lexres.hpp"
#include "snacs/targetid.hpp"

namespace snacs {

struct NeighborContext {
  std::optional<int> governor;
  std::optional<int> object;
  std::optional<int> prev_verb;
  std::optional<int> prev_noun;
  std::optional<int> prev_adj;
  std::optional<int> next_noun;
};

NeighborContext locate_neighbors(const Sentence& sentence, const TargetPrediction& target);

// Sparse indicator features keyed by name; every value is 1.0.
using FeatureVector = std::map<std::string, double>;

FeatureVector extract_features(const Sentence& sentence, const TargetPrediction& target,
                               const NeighborContext& ctx, const LexicalResourceBundle& res);

struct MostFrequentTable {
  std::map<std::string, Construal> by_lemma;  // key: expression lemmas joined by ' '
  Construal fallback;
};

MostFrequentTable train_mfs(const std::vector<Sentence>& train);
Construal predict_mfs(const MostFrequentTable& table, const Sentence& sentence,
                      const TargetPrediction& target);

struct TrainConfig {
  double C = 1.0;
  int epochs = 100;
  unsigned seed = 0;  // echoed into model files; training itself is order-deterministic

  bool operator==(const TrainConfig&) const = default;
};

struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// One-vs-all L2-regularized hinge-loss linear classifier, trained by
// deterministic dual coordinate descent over string-keyed sparse features.
class LinearModel {
 public:
  LinearModel() = default;

  static LinearModel train(const std::vector<FeatureVector>& examples,
                           const std::vector<std::string>& labels, const TrainConfig& config);

  // argmax over labels; ties go to the lexicographically smaller label.
  std::string predict(const FeatureVector& x) const;
  std::map<std::string, double> scores(const FeatureVector& x) const;

  const std::vector<std::string>& labels() const { return labels_; }
  const TrainConfig& config() const { return config_; }
  // Dual objective after each epoch, summed over the one-vs-all problems;
  // non-increasing for exact coordinate descent.
  const std::vector<double>& objective_by_epoch() const { return objective_; }

  std::string serialize() const;
  static LinearModel deserialize(std::string_view text);
  void save(const std::string& path) const;
  static LinearModel load(const std::string& path);

  bool operator==(const LinearModel&) const = default;

 private:
  std::vector<std::string> labels_;          // sorted
  std::vector<std::string> feature_names_;   // index order
  std::map<std::string, int> feature_index_;
  std::vector<std::vector<double>> weights_;  // [label][feature]
  TrainConfig config_;
  std::vector<double> objective_;

  double score(int label, const FeatureVector& x) const;
};

struct ConstrualPrediction {
  Construal construal;
  std::map<std::string, double> role_scores;
  std::map<std::string, double> function_scores;
};

// Gold construal-bearing targets of a corpus, in sentence order: the training
// and gold-ID evaluation unit.
struct GoldTarget {
  int sentence = 0;  // index into the corpus vector
  TargetPrediction target;
  Construal construal;
  Lexcat lexcat = Lexcat::P;
};

std::vector<GoldTarget> collect_gold_targets(const std::vector<Sentence>& corpus);

struct ModelPair {
  LinearModel role;
  LinearModel function;
};

ModelPair train_linear(const std::vector<Sentence>& train, const LexicalResourceBundle& res,
                       const TrainConfig& config);

ConstrualPrediction predict_linear(const ModelPair& models, const Sentence& sentence,
                                   const TargetPrediction& target,
                                   const LexicalResourceBundle& res);

std::string serialize_mfs(const MostFrequentTable& table);
MostFrequentTable parse_mfs(std::string_view text);

}  // namespace snacs
