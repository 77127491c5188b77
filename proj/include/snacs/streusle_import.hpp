#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "snacs/corpus.hpp"

namespace snacs {

struct ImportError : std::runtime_error {
  explicit ImportError(const std::string& msg) : std::runtime_error(msg) {}
};

// Optional named-entity sidecar: "<sent_id>\t<token index>\t<label>" lines.
using NerTable = std::map<std::pair<std::string, int>, std::string>;

NerTable parse_ner_file(std::string_view text);

// Converts STREUSLE 4.0 JSON into the 14-column corpus data model. Kept
// expressions: all single-word and multiword units with an adposition or
// possessive lexical category (construals, ?? and special labels), plain
// infinitives and discourse expressions, and every other strong multiword
// expression (the blacklist raw material, imported as OTHER with no label).
// Weak multiword expressions are dropped.
std::vector<Sentence> import_streusle(std::string_view json_text, const NerTable& ner = {});

}  // namespace snacs
