#include "ordo/dtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <boost/math/distributions/normal.hpp>

namespace ordo::dtree {

namespace {

constexpr std::array<std::string_view, 3> kLabelNames = {"BEFORE", "AFTER", "EQUAL"};

Label majority(const Counts& c) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] > c[best]) best = i;
  }
  return static_cast<Label>(best);
}

double entropy(const Counts& c) {
  const double n = static_cast<double>(c[0]) + c[1] + c[2];
  if (n <= 0) return 0.0;
  double h = 0.0;
  for (auto k : c) {
    if (k == 0) continue;
    const double p = k / n;
    h -= p * std::log2(p);
  }
  return h;
}

Node grow(const Dataset& data, std::vector<std::size_t> rows, std::vector<bool>& used,
          const TrainOptions& options) {
  Node node;
  for (auto r : rows) ++node.counts[static_cast<std::size_t>(data.rows[r].label)];
  node.label = majority(node.counts);
  const auto nonzero = std::count_if(node.counts.begin(), node.counts.end(),
                                     [](std::uint32_t k) { return k > 0; });
  if (nonzero <= 1 || rows.size() < 2 * static_cast<std::size_t>(options.min_leaf)) return node;

  const SplitChoice choice = choose_split(data, rows, options, used);
  if (!choice.attribute) return node;
  const std::size_t a = *choice.attribute;

  std::map<Value, std::vector<std::size_t>> parts;
  for (auto r : rows) parts[data.rows[r].values[a]].push_back(r);
  rows.clear();
  rows.shrink_to_fit();

  node.attribute = static_cast<int>(a);
  used[a] = true;
  for (auto& [value, subset] : parts) {
    node.branch_values.push_back(value);
    node.children.push_back(grow(data, std::move(subset), used, options));
  }
  used[a] = false;
  return node;
}

// Training errors of the subtree if every leaf keeps its own label.
double subtree_training_errors(const Node& n) {
  if (n.is_leaf()) return n.total() - n.counts[static_cast<std::size_t>(n.label)];
  double e = 0;
  for (const auto& c : n.children) e += subtree_training_errors(c);
  return e;
}

double estimated_errors_as_leaf(const Node& n, double confidence) {
  const double total = n.total();
  if (total <= 0) return 0.0;
  const double wrong = total - *std::max_element(n.counts.begin(), n.counts.end());
  return wrong + added_errors(total, wrong, confidence);
}

double estimated_subtree_errors(const Node& n, double confidence) {
  if (n.is_leaf()) return estimated_errors_as_leaf(n, confidence);
  double e = 0;
  for (const auto& c : n.children) e += estimated_subtree_errors(c, confidence);
  return e;
}

void make_leaf(Node& n) {
  n.attribute = Node::kLeaf;
  n.branch_values.clear();
  n.children.clear();
  n.label = majority(n.counts);
}

void collapse(Node& n) {
  if (n.is_leaf()) return;
  const double as_leaf = n.total() - *std::max_element(n.counts.begin(), n.counts.end());
  if (subtree_training_errors(n) >= as_leaf - 1e-3) {
    make_leaf(n);
    return;
  }
  for (auto& c : n.children) collapse(c);
}

void prune(Node& n, double confidence) {
  if (n.is_leaf()) return;
  for (auto& c : n.children) prune(c, confidence);
  if (estimated_errors_as_leaf(n, confidence) <= estimated_subtree_errors(n, confidence) + 0.1) {
    make_leaf(n);
  }
}

// Values routed to child `i`: its own branch value, plus every value without
// a branch when it is the fallback child.
bool child_admits(const Node& n, std::size_t i, const std::vector<bool>& allowed) {
  const Value own = n.branch_values[i];
  if (own < allowed.size() && allowed[own]) return true;
  if (i != n.fallback()) return false;
  for (std::size_t v = 0; v < allowed.size(); ++v) {
    if (!allowed[v]) continue;
    if (std::find(n.branch_values.begin(), n.branch_values.end(), v) == n.branch_values.end()) {
      return true;
    }
  }
  return false;
}

template <typename Visit>
void walk_satisfiable(const Node& n, const Constraints& c, Visit&& visit) {
  visit(n);
  if (n.is_leaf()) return;
  auto it = c.find(static_cast<std::size_t>(n.attribute));
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (it == c.end() || child_admits(n, i, it->second)) walk_satisfiable(n.children[i], c, visit);
  }
}

void collect_leaf_paths(const Node& n, std::vector<std::size_t>& path,
                        std::vector<std::vector<std::size_t>>& out) {
  if (n.is_leaf()) {
    out.push_back(path);
    return;
  }
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    path.push_back(i);
    collect_leaf_paths(n.children[i], path, out);
    path.pop_back();
  }
}

Node specialize_node(const Node& n, int attribute, std::optional<Value> value) {
  if (n.is_leaf()) return n;
  if (n.attribute == attribute) {
    const Node& next = value ? n.child_for(*value) : n.children[n.fallback()];
    return specialize_node(next, attribute, value);
  }
  Node out;
  out.attribute = n.attribute;
  out.label = n.label;
  out.counts = n.counts;
  out.branch_values = n.branch_values;
  out.children.reserve(n.children.size());
  for (const auto& c : n.children) out.children.push_back(specialize_node(c, attribute, value));
  return out;
}

Node rebase_node(const Node& n, const Schema& from, const Schema& to) {
  Node out = n;
  if (n.is_leaf()) return out;
  const Attribute& src = from.attributes[static_cast<std::size_t>(n.attribute)];
  const auto target = to.find(src.name);
  if (!target) throw std::invalid_argument("attribute " + src.name + " is not in the target schema");
  out.attribute = static_cast<int>(*target);
  const Attribute& dst = to.attributes[*target];
  for (std::size_t i = 0; i < n.branch_values.size(); ++i) {
    const std::string& name = src.values.at(n.branch_values[i]);
    const auto v = dst.find(name);
    if (!v) throw std::invalid_argument("value " + name + " of " + src.name + " is not in the target schema");
    out.branch_values[i] = *v;
    out.children[i] = rebase_node(n.children[i], from, to);
  }
  return out;
}

void write_node(std::ostream& out, const Schema& schema, const Node& n, int depth) {
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    const Attribute& a = schema.attributes[static_cast<std::size_t>(n.attribute)];
    for (int d = 0; d < depth; ++d) out << "|   ";
    out << a.name << " = " << a.values[n.branch_values[i]];
    const Node& c = n.children[i];
    if (c.is_leaf()) {
      out << ": " << to_string(c.label) << " (" << c.counts[0] << '/' << c.counts[1] << '/'
          << c.counts[2] << ")\n";
    } else {
      out << '\n';
      write_node(out, schema, c, depth + 1);
    }
  }
}

}  // namespace

std::string_view to_string(Label l) { return kLabelNames[static_cast<std::size_t>(l)]; }

std::optional<Label> parse_label(std::string_view s) {
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == s) return static_cast<Label>(i);
  }
  return std::nullopt;
}

Label opposite(Label l) {
  switch (l) {
    case Label::Before:
      return Label::After;
    case Label::After:
      return Label::Before;
    case Label::Equal:
      break;
  }
  return Label::Equal;
}

std::optional<Value> Attribute::find(std::string_view v) const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == v) return static_cast<Value>(i);
  }
  return std::nullopt;
}

std::optional<std::size_t> Schema::find(std::string_view name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Schema::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw std::out_of_range("unknown attribute " + std::string(name));
}

void Dataset::write_csv(std::ostream& out) const {
  for (const auto& a : schema.attributes) out << a.name << ',';
  out << "class\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      out << schema.attributes[i].values[row.values[i]] << ',';
    }
    out << to_string(row.label) << '\n';
  }
}

std::size_t Node::fallback() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < children.size(); ++i) {
    if (children[i].total() > children[best].total()) best = i;
  }
  return best;
}

const Node& Node::child_for(Value v) const {
  for (std::size_t i = 0; i < branch_values.size(); ++i) {
    if (branch_values[i] == v) return children[i];
  }
  return children[fallback()];
}

double added_errors(double n, double e, double confidence) {
  if (confidence > 0.5) return 0.0;
  if (e < 1) {
    const double base = n * (1 - std::pow(confidence, 1 / n));
    if (e == 0) return base;
    return base + e * (added_errors(n, 1, confidence) - base);
  }
  if (e + 0.5 >= n) return std::max(n - e, 0.0);
  const double z = boost::math::quantile(boost::math::normal(), 1 - confidence);
  const double f = (e + 0.5) / n;
  const double r =
      (f + (z * z) / (2 * n) + z * std::sqrt((f / n) - (f * f / n) + (z * z / (4 * n * n)))) /
      (1 + (z * z) / n);
  return r * n - e;
}

bool exceeds_chance(std::uint32_t agree, std::uint32_t n) {
  return agree > n / 2.0 + std::sqrt(static_cast<double>(n)) / 2.0;
}

SplitChoice choose_split(const Dataset& data, std::span<const std::size_t> rows,
                         const TrainOptions& options, const std::vector<bool>& excluded) {
  struct Candidate {
    std::size_t attribute;
    double gain;
    double ratio;
  };
  Counts total{};
  for (auto r : rows) ++total[static_cast<std::size_t>(data.rows[r].label)];
  const double n = static_cast<double>(rows.size());
  const double base = entropy(total);

  std::vector<Candidate> candidates;
  std::vector<Counts> per_value;
  for (std::size_t a = 0; a < data.schema.size(); ++a) {
    if (a < excluded.size() && excluded[a]) continue;
    per_value.assign(data.schema.attributes[a].values.size(), Counts{});
    for (auto r : rows) {
      const Sample& s = data.rows[r];
      ++per_value[s.values[a]][static_cast<std::size_t>(s.label)];
    }
    int big_enough = 0;
    double remainder = 0.0;
    double split_info = 0.0;
    for (const auto& c : per_value) {
      const double k = static_cast<double>(c[0]) + c[1] + c[2];
      if (k == 0) continue;
      if (k >= options.min_leaf) ++big_enough;
      const double p = k / n;
      remainder += p * entropy(c);
      split_info -= p * std::log2(p);
    }
    if (big_enough < 2) continue;
    const double gain = base - remainder;
    if (gain <= 1e-10 || split_info <= 0) continue;
    candidates.push_back({a, gain, gain / split_info});
  }
  if (candidates.empty()) return {};

  double mean = 0.0;
  for (const auto& c : candidates) mean += c.gain;
  mean /= static_cast<double>(candidates.size());

  SplitChoice best;
  for (const auto& c : candidates) {
    if (c.gain < mean - 1e-3) continue;
    if (!best.attribute || c.ratio > best.gain_ratio + 1e-12) {
      best = {c.attribute, c.gain, c.ratio};
    }
  }
  return best;
}

DecisionTree train(const Dataset& data, const TrainOptions& options) {
  if (data.rows.empty()) throw EmptyDataset();
  DecisionTree tree;
  tree.schema = data.schema;
  std::vector<std::size_t> rows(data.rows.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<bool> used(data.schema.size(), false);
  tree.root = grow(data, std::move(rows), used, options);
  if (options.prune) {
    collapse(tree.root);
    prune(tree.root, options.confidence);
  }
  return tree;
}

Label classify(const DecisionTree& tree, std::span<const Value> values) {
  const Node* n = &tree.root;
  while (!n->is_leaf()) n = &n->child_for(values[static_cast<std::size_t>(n->attribute)]);
  return n->label;
}

DecisionTree cleanup_significance(DecisionTree tree, std::uint32_t min_agree) {
  for (const auto& path : leaf_paths(tree.root)) {
    Node& leaf = node_at(tree.root, path);
    if (leaf.label == Label::Equal) continue;
    const std::uint32_t agree = leaf.counts[static_cast<std::size_t>(leaf.label)];
    if (agree < min_agree || !exceeds_chance(agree, leaf.total())) leaf.label = Label::Equal;
  }
  return tree;
}

Constraints path_constraints(const DecisionTree& tree, std::span<const std::size_t> child_path) {
  Constraints out;
  const Node* n = &tree.root;
  for (auto i : child_path) {
    const auto a = static_cast<std::size_t>(n->attribute);
    const std::size_t domain = tree.schema.attributes[a].values.size();
    std::vector<bool> allowed(domain, false);
    allowed[n->branch_values[i]] = true;
    if (i == n->fallback()) {
      for (std::size_t v = 0; v < domain; ++v) {
        if (std::find(n->branch_values.begin(), n->branch_values.end(), v) ==
            n->branch_values.end()) {
          allowed[v] = true;
        }
      }
    }
    auto [it, inserted] = out.emplace(a, allowed);
    if (!inserted) {
      for (std::size_t v = 0; v < domain; ++v) it->second[v] = it->second[v] && allowed[v];
    }
    n = &n->children[i];
  }
  return out;
}

Constraints swap_constraints(const Constraints& c, const SwapMap& swap, const Schema& schema) {
  Constraints out;
  for (const auto& [a, allowed] : c) {
    const std::size_t b = swap.attribute[a];
    std::vector<bool> mapped(schema.attributes[b].values.size(), false);
    for (std::size_t v = 0; v < allowed.size(); ++v) {
      if (!allowed[v]) continue;
      for (Value w : swap.values[a][v]) mapped[w] = true;
    }
    auto [it, inserted] = out.emplace(b, mapped);
    if (!inserted) {
      for (std::size_t v = 0; v < mapped.size(); ++v) it->second[v] = it->second[v] && mapped[v];
    }
  }
  return out;
}

std::set<Label> reachable_labels(const DecisionTree& tree, const Constraints& c) {
  std::set<Label> out;
  walk_satisfiable(tree.root, c, [&](const Node& n) {
    if (n.is_leaf()) out.insert(n.label);
  });
  return out;
}

DecisionTree cleanup_consistency(DecisionTree tree, const SwapMap& swap) {
  const auto paths = leaf_paths(tree.root);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& path : paths) {
      Node& leaf = node_at(tree.root, path);
      if (leaf.label == Label::Equal) continue;
      const auto swapped = swap_constraints(path_constraints(tree, path), swap, tree.schema);
      const auto outcomes = reachable_labels(tree, swapped);
      if (outcomes != std::set<Label>{opposite(leaf.label)}) {
        leaf.label = Label::Equal;
        changed = true;
      }
    }
  }
  return tree;
}

DecisionTree specialize(const DecisionTree& tree, std::string_view attribute,
                        std::string_view value) {
  const auto a = tree.schema.find(attribute);
  if (!a) return tree;
  DecisionTree out;
  out.schema = tree.schema;
  out.root = specialize_node(tree.root, static_cast<int>(*a), tree.schema.attributes[*a].find(value));
  return out;
}

std::set<std::string> used_attributes(const DecisionTree& tree, const Constraints& filter) {
  std::set<std::string> out;
  walk_satisfiable(tree.root, filter, [&](const Node& n) {
    if (!n.is_leaf()) out.insert(tree.schema.attributes[static_cast<std::size_t>(n.attribute)].name);
  });
  return out;
}

DecisionTree rebase(const DecisionTree& tree, const Schema& target) {
  DecisionTree out;
  out.schema = target;
  out.root = rebase_node(tree.root, tree.schema, target);
  return out;
}

void write_text(std::ostream& out, const DecisionTree& tree) {
  if (tree.root.is_leaf()) {
    const auto& c = tree.root.counts;
    out << ": " << to_string(tree.root.label) << " (" << c[0] << '/' << c[1] << '/' << c[2]
        << ")\n";
    return;
  }
  write_node(out, tree.schema, tree.root, 0);
}

std::vector<std::vector<std::size_t>> leaf_paths(const Node& root) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  collect_leaf_paths(root, path, out);
  return out;
}

Node& node_at(Node& root, std::span<const std::size_t> path) {
  Node* n = &root;
  for (auto i : path) n = &n->children[i];
  return *n;
}

const Node& node_at(const Node& root, std::span<const std::size_t> path) {
  const Node* n = &root;
  for (auto i : path) n = &n->children[i];
  return *n;
}

std::vector<std::size_t> leaf_path_for(const DecisionTree& tree, std::span<const Value> values) {
  std::vector<std::size_t> path;
  const Node* n = &tree.root;
  while (!n->is_leaf()) {
    const Value v = values[static_cast<std::size_t>(n->attribute)];
    std::size_t idx = n->fallback();
    for (std::size_t i = 0; i < n->branch_values.size(); ++i) {
      if (n->branch_values[i] == v) idx = i;
    }
    path.push_back(idx);
    n = &n->children[idx];
  }
  return path;
}

}  // namespace ordo::dtree
