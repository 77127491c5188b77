#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace snacs {

// Index into Hierarchy::nodes(); stable for the lifetime of the Hierarchy.
using SupersenseId = int;

struct Supersense {
  std::string name;
  SupersenseId parent = -1;  // -1 for roots
  int depth = 1;             // roots have depth 1
};

// Ordered (scene role, function) pair of supersense names, the unit of
// disambiguation. Label strings are case-sensitive.
struct Construal {
  std::string role;
  std::string function;

  bool operator==(const Construal&) const = default;
};

struct ConstrualCheck {
  bool ok = true;
  std::string offending;  // label that failed; empty when ok
  std::string slot;       // "role" or "function"; empty when ok
  std::string reason;
};

struct HierarchyError : std::runtime_error {
  explicit HierarchyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Immutable supersense forest with depth/ancestor queries and coarsening.
// Loading is single-threaded; all queries are safe for concurrent reads.
class Hierarchy {
 public:
  // Parses a hierarchy definition: one "<name>\t<parent>" line per node,
  // roots with an empty parent field, '#' comments and blank lines ignored.
  // Node order is free; parents may be declared after their children.
  static Hierarchy load(std::string_view definition);
  static Hierarchy load_file(const std::string& path);

  // The bundled SNACS inventory: 50 supersenses, 3 roots, max depth 4.
  static const Hierarchy& snacs();
  static std::string_view snacs_definition();

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Supersense>& nodes() const { return nodes_; }
  const std::vector<SupersenseId>& roots() const { return roots_; }
  int max_depth() const { return max_depth_; }

  std::optional<SupersenseId> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }
  const std::string& name(SupersenseId id) const { return nodes_.at(id).name; }

  int depth(SupersenseId id) const { return nodes_.at(id).depth; }
  // Throws HierarchyError for unknown labels.
  int depth_of(std::string_view name) const;

  // Unique ancestor at target_depth, or the node itself when its depth is
  // already <= target_depth. target_depth must be >= 1.
  SupersenseId coarsen(SupersenseId id, int target_depth) const;
  std::string coarsen_label(std::string_view name, int target_depth) const;

  // Number of nodes in the subtree rooted at id (including id).
  int subtree_size(SupersenseId id) const;

  // Cardinality of { coarsen(l, depth) : l in labels }. Unknown labels throw.
  int coarsened_label_count(const std::vector<std::string>& labels, int target_depth) const;

  // Accepts iff both members are nodes and the function is not restricted to
  // role position by the configured constraint set.
  ConstrualCheck validate_construal(const Construal& c,
                                    const std::unordered_set<std::string>& role_only = {}) const;

 private:
  std::vector<Supersense> nodes_;
  std::vector<SupersenseId> roots_;
  std::unordered_map<std::string, SupersenseId> by_name_;
  int max_depth_ = 0;
};

}  // namespace snacs
