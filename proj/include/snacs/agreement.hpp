#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snacs/corpus.hpp"
#include "snacs/eval.hpp"
#include "snacs/hierarchy.hpp"

namespace snacs {

// One annotation target shared by all annotators. An annotator without a
// construal (special label or bare lexical category) holds nullopt.
struct AgreementItem {
  std::string sentence_id;
  std::vector<int> token_indices;
  std::vector<std::optional<Construal>> annotations;  // one per annotator
};

struct AgreementTable {
  std::vector<std::string> annotators;
  std::vector<AgreementItem> items;
};

struct JoinResult {
  AgreementTable table;
  // Targets not shared by every annotator, reported as
  // "<annotators>: <sent_id> tokens <indices>".
  std::vector<std::string> misalignments;
};

// Joins N parallel corpora on (sentence id, token indices). Sentence ids
// missing from some corpora are misalignments too.
JoinResult join_annotations(const std::vector<std::vector<Sentence>>& corpora,
                            const std::vector<std::string>& annotator_names);

// Keeps only items where every annotator assigned a construal.
AgreementTable filter_semantic(const AgreementTable& table);

struct PairwiseAgreement {
  std::vector<std::vector<double>> matrix;  // percentages; diagonal = 100
  double average = 0;                       // over unordered pairs
};

PairwiseAgreement pairwise_agreement(const AgreementTable& table, Dimension dim,
                                     const Hierarchy& h, int depth = 4);

// Standard two-rater Cohen's kappa with per-annotator marginals; defined as 1
// when expected agreement is 1. Items lacking a construal for either side are
// ignored.
double cohen_kappa(const AgreementTable& table, int a, int b, Dimension dim,
                   const Hierarchy& h, int depth = 4);

double average_pairwise_kappa(const AgreementTable& table, Dimension dim, const Hierarchy& h,
                              int depth = 4);

// Per-annotator rate of matching the unique most-chosen label per item; items
// with no unique plurality count as disagreement for every annotator.
std::vector<double> plurality_agreement(const AgreementTable& table, Dimension dim,
                                        const Hierarchy& h, int depth = 4);

// Symmetric label-pair counts summed over items and unordered annotator
// pairs; total mass = items * N(N-1)/2 on an all-construal table.
ConfusionMatrix pair_confusions(const AgreementTable& table, Dimension dim, const Hierarchy& h,
                                int depth = 4);

}  // namespace snacs
