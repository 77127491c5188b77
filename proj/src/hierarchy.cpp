#include "snacs/hierarchy.hpp"

#include "snacs/util.hpp"

namespace snacs {

namespace {

// The SNACS inventory exactly as published: 50 supersenses under the roots
// Circumstance, Participant, and Configuration.
constexpr std::string_view kSnacsDefinition =
    "# SNACS supersense inventory: name<TAB>parent, roots have an empty parent field.\n"
    "Circumstance\t\n"
    "Temporal\tCircumstance\n"
    "Time\tTemporal\n"
    "StartTime\tTime\n"
    "EndTime\tTime\n"
    "Frequency\tTemporal\n"
    "Duration\tTemporal\n"
    "Interval\tTemporal\n"
    "Locus\tCircumstance\n"
    "Source\tLocus\n"
    "Goal\tLocus\n"
    "Path\tCircumstance\n"
    "Direction\tPath\n"
    "Extent\tPath\n"
    "Means\tCircumstance\n"
    "Manner\tCircumstance\n"
    "Explanation\tCircumstance\n"
    "Purpose\tExplanation\n"
    "Participant\t\n"
    "Causer\tParticipant\n"
    "Agent\tCauser\n"
    "Co-Agent\tAgent\n"
    "Theme\tParticipant\n"
    "Co-Theme\tTheme\n"
    "Topic\tTheme\n"
    "Stimulus\tParticipant\n"
    "Experiencer\tParticipant\n"
    "Originator\tParticipant\n"
    "Recipient\tParticipant\n"
    "Cost\tParticipant\n"
    "Beneficiary\tParticipant\n"
    "Instrument\tParticipant\n"
    "Configuration\t\n"
    "Identity\tConfiguration\n"
    "Species\tConfiguration\n"
    "Gestalt\tConfiguration\n"
    "Possessor\tGestalt\n"
    "Whole\tGestalt\n"
    "Characteristic\tConfiguration\n"
    "Possession\tCharacteristic\n"
    "PartPortion\tCharacteristic\n"
    "Stuff\tPartPortion\n"
    "Accompanier\tConfiguration\n"
    "InsteadOf\tConfiguration\n"
    "ComparisonRef\tConfiguration\n"
    "RateUnit\tConfiguration\n"
    "Quantity\tConfiguration\n"
    "Approximator\tQuantity\n"
    "SocialRel\tConfiguration\n"
    "OrgRole\tSocialRel\n";

}  // namespace

Hierarchy Hierarchy::load(std::string_view definition) {
  Hierarchy h;
  std::vector<std::string> parent_names;

  int lineno = 0;
  for (std::string& raw : split(definition, '\n')) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line = raw;
    if (trim(line).empty() || trim(line).front() == '#') continue;

    auto tab = line.find('\t');
    std::string name(trim(tab == std::string_view::npos ? line : line.substr(0, tab)));
    std::string parent(tab == std::string_view::npos ? ""
                                                     : std::string(trim(line.substr(tab + 1))));
    if (name.empty())
      throw HierarchyError("hierarchy definition line " + std::to_string(lineno) +
                           ": empty node name");
    if (h.by_name_.count(name))
      throw HierarchyError("duplicate supersense name: " + name);
    h.by_name_.emplace(name, static_cast<SupersenseId>(h.nodes_.size()));
    h.nodes_.push_back(Supersense{name, -1, 0});
    parent_names.push_back(parent);
  }

  for (size_t i = 0; i < h.nodes_.size(); ++i) {
    if (parent_names[i].empty()) {
      h.roots_.push_back(static_cast<SupersenseId>(i));
      continue;
    }
    auto it = h.by_name_.find(parent_names[i]);
    if (it == h.by_name_.end())
      throw HierarchyError("unknown parent \"" + parent_names[i] + "\" of node \"" +
                           h.nodes_[i].name + "\"");
    h.nodes_[i].parent = it->second;
  }

  // Depths via parent walk; a walk longer than the node count means a cycle.
  for (size_t i = 0; i < h.nodes_.size(); ++i) {
    int d = 1;
    SupersenseId cur = h.nodes_[i].parent;
    while (cur >= 0) {
      ++d;
      if (d > static_cast<int>(h.nodes_.size()))
        throw HierarchyError("cycle detected at node \"" + h.nodes_[i].name + "\"");
      cur = h.nodes_[cur].parent;
    }
    h.nodes_[i].depth = d;
    h.max_depth_ = std::max(h.max_depth_, d);
  }

  if (h.nodes_.empty()) throw HierarchyError("empty hierarchy definition");
  return h;
}

Hierarchy Hierarchy::load_file(const std::string& path) { return load(read_file(path)); }

const Hierarchy& Hierarchy::snacs() {
  static const Hierarchy instance = [] {
    Hierarchy h = load(kSnacsDefinition);
    if (h.size() != 50)
      throw HierarchyError("bundled SNACS inventory must have 50 nodes, got " +
                           std::to_string(h.size()));
    if (h.roots().size() != 3) throw HierarchyError("bundled SNACS inventory must have 3 roots");
    return h;
  }();
  return instance;
}

std::string_view Hierarchy::snacs_definition() { return kSnacsDefinition; }

std::optional<SupersenseId> Hierarchy::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int Hierarchy::depth_of(std::string_view name) const {
  auto id = find(name);
  if (!id) throw HierarchyError("unknown supersense: " + std::string(name));
  return nodes_[*id].depth;
}

SupersenseId Hierarchy::coarsen(SupersenseId id, int target_depth) const {
  if (target_depth < 1) throw HierarchyError("coarsening depth must be >= 1");
  SupersenseId cur = id;
  while (nodes_.at(cur).depth > target_depth) cur = nodes_[cur].parent;
  return cur;
}

std::string Hierarchy::coarsen_label(std::string_view name, int target_depth) const {
  auto id = find(name);
  if (!id) throw HierarchyError("unknown supersense: " + std::string(name));
  return nodes_[coarsen(*id, target_depth)].name;
}

int Hierarchy::subtree_size(SupersenseId id) const {
  int count = 0;
  for (SupersenseId i = 0; i < size(); ++i) {
    SupersenseId cur = i;
    while (cur >= 0) {
      if (cur == id) {
        ++count;
        break;
      }
      cur = nodes_[cur].parent;
    }
  }
  return count;
}

int Hierarchy::coarsened_label_count(const std::vector<std::string>& labels,
                                     int target_depth) const {
  std::unordered_set<SupersenseId> image;
  for (const auto& l : labels) {
    auto id = find(l);
    if (!id) throw HierarchyError("unknown supersense: " + l);
    image.insert(coarsen(*id, target_depth));
  }
  return static_cast<int>(image.size());
}

ConstrualCheck Hierarchy::validate_construal(const Construal& c,
                                             const std::unordered_set<std::string>& role_only) const {
  if (!contains(c.role)) return {false, c.role, "role", "unknown supersense"};
  if (!contains(c.function)) return {false, c.function, "function", "unknown supersense"};
  if (role_only.count(c.function))
    return {false, c.function, "function", "supersense is restricted to the role slot"};
  return {};
}

}  // namespace snacs
