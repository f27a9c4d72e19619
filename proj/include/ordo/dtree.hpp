#pragma once

// Decision trees over purely nominal attributes with a three-valued class,
// trained C4.5-style (gain ratio, pessimistic pruning), plus the passes that
// turn unreliable or asymmetric verdicts into EQUAL.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ordo::dtree {

enum class Label : std::uint8_t { Before = 0, After = 1, Equal = 2 };

inline constexpr std::array<Label, 3> kAllLabels = {Label::Before, Label::After, Label::Equal};

std::string_view to_string(Label l);
std::optional<Label> parse_label(std::string_view s);
Label opposite(Label l);

using Value = std::uint16_t;

struct Attribute {
  std::string name;
  std::vector<std::string> values;

  std::optional<Value> find(std::string_view v) const;
  bool operator==(const Attribute&) const = default;
};

struct Schema {
  std::vector<Attribute> attributes;

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;  // throws std::out_of_range
  std::size_t size() const { return attributes.size(); }
  bool operator==(const Schema&) const = default;
};

struct Sample {
  std::vector<Value> values;
  Label label = Label::Equal;

  bool operator==(const Sample&) const = default;
};

struct Dataset {
  Schema schema;
  std::vector<Sample> rows;

  /// CSV with a header of attribute names plus "class".
  void write_csv(std::ostream& out) const;
};

using Counts = std::array<std::uint32_t, 3>;

struct Node {
  static constexpr int kLeaf = -1;

  int attribute = kLeaf;
  Label label = Label::Equal;
  Counts counts{};  // training rows reaching this node, per class
  std::vector<Value> branch_values;
  std::vector<Node> children;

  bool is_leaf() const { return attribute == kLeaf; }
  std::uint32_t total() const { return counts[0] + counts[1] + counts[2]; }
  /// Child followed by values that have no branch: the largest by row count.
  std::size_t fallback() const;
  /// Child for `v`, or the fallback child.
  const Node& child_for(Value v) const;

  bool operator==(const Node&) const = default;
};

struct DecisionTree {
  Schema schema;
  Node root;

  bool operator==(const DecisionTree&) const = default;
};

class EmptyDataset : public std::invalid_argument {
 public:
  EmptyDataset() : std::invalid_argument("cannot train on an empty dataset") {}
};

struct TrainOptions {
  std::uint32_t min_leaf = 2;
  double confidence = 0.25;
  bool prune = true;
};

DecisionTree train(const Dataset& data, const TrainOptions& options = {});

Label classify(const DecisionTree& tree, std::span<const Value> values);

/// The attribute a node holding `rows` would split on, if any. Exposed so the
/// selection rule can be checked in isolation.
struct SplitChoice {
  std::optional<std::size_t> attribute;
  double gain = 0.0;
  double gain_ratio = 0.0;
};
SplitChoice choose_split(const Dataset& data, std::span<const std::size_t> rows,
                         const TrainOptions& options, const std::vector<bool>& excluded = {});

/// Upper confidence bound on extra errors at a leaf with `n` rows and `e`
/// errors, as used by C4.5 pessimistic pruning.
double added_errors(double n, double e, double confidence);

/// `agree` exceeds the binomial(n, 1/2) mean by more than one standard
/// deviation.
bool exceeds_chance(std::uint32_t agree, std::uint32_t n);

DecisionTree cleanup_significance(DecisionTree tree, std::uint32_t min_agree = 5);

/// Value-level swap of the two compared components. `attribute[a]` is the
/// attribute that `a` becomes; `values[a][v]` the values `v` may become.
struct SwapMap {
  std::vector<std::size_t> attribute;
  std::vector<std::vector<std::vector<Value>>> values;

  std::size_t size() const { return attribute.size(); }
};

/// Allowed values per attribute; attributes without an entry are free.
using Constraints = std::map<std::size_t, std::vector<bool>>;

Constraints path_constraints(const DecisionTree& tree, std::span<const std::size_t> child_path);
Constraints swap_constraints(const Constraints& c, const SwapMap& swap, const Schema& schema);

/// Labels of every leaf a sample satisfying `c` could reach.
std::set<Label> reachable_labels(const DecisionTree& tree, const Constraints& c);

DecisionTree cleanup_consistency(DecisionTree tree, const SwapMap& swap);

/// Replaces every split on `attribute` by its branch for `value`.
DecisionTree specialize(const DecisionTree& tree, std::string_view attribute,
                        std::string_view value);

/// Attributes tested on any path satisfiable together with `filter`.
std::set<std::string> used_attributes(const DecisionTree& tree, const Constraints& filter);

/// Re-expresses the tree over `target`, mapping attributes and values by
/// name. Throws std::invalid_argument when a tested attribute or branch value
/// is missing from `target`.
DecisionTree rebase(const DecisionTree& tree, const Schema& target);

/// Indented text dump for debugging.
void write_text(std::ostream& out, const DecisionTree& tree);

/// Every leaf, with its child-index path from the root.
std::vector<std::vector<std::size_t>> leaf_paths(const Node& root);
Node& node_at(Node& root, std::span<const std::size_t> path);
const Node& node_at(const Node& root, std::span<const std::size_t> path);

/// Leaf reached by a sample, as a child-index path.
std::vector<std::size_t> leaf_path_for(const DecisionTree& tree, std::span<const Value> values);

}  // namespace ordo::dtree
