#include "ordo/model.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace ordo {

namespace pt = boost::property_tree;

namespace {

constexpr std::string_view kAttr = "<xmlattr>";

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto at = s.find(sep, start);
    out.emplace_back(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) return out;
    start = at + 1;
  }
}

dtree::Label majority(const dtree::Counts& c) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] > c[best]) best = i;
  }
  return static_cast<dtree::Label>(best);
}

// Collapses subtrees whose leaves all carry one label.
void simplify(dtree::Node& n) {
  if (n.is_leaf()) return;
  std::optional<dtree::Label> common;
  bool uniform = true;
  for (auto& c : n.children) {
    simplify(c);
    if (!c.is_leaf()) {
      uniform = false;
    } else if (!common) {
      common = c.label;
    } else if (*common != c.label) {
      uniform = false;
    }
  }
  if (uniform && common) {
    n.attribute = dtree::Node::kLeaf;
    n.branch_values.clear();
    n.children.clear();
    n.label = *common;
  }
}

// ---- writing ----

class XmlWriter {
 public:
  explicit XmlWriter(std::ostream& out) : out_(out) {}

  void open(std::string_view name, std::initializer_list<std::pair<std::string_view, std::string>> attrs,
            bool self_close = false) {
    indent();
    out_ << '<' << name;
    for (const auto& [k, v] : attrs) out_ << ' ' << k << "=\"" << xml_escape(v, true) << '"';
    out_ << (self_close ? "/>\n" : ">\n");
    if (!self_close) ++depth_;
  }
  void close(std::string_view name) {
    --depth_;
    indent();
    out_ << "</" << name << ">\n";
  }
  void text_element(std::string_view name,
                    std::initializer_list<std::pair<std::string_view, std::string>> attrs,
                    std::string_view text) {
    indent();
    out_ << '<' << name;
    for (const auto& [k, v] : attrs) out_ << ' ' << k << "=\"" << xml_escape(v, true) << '"';
    out_ << '>' << xml_escape(text, false) << "</" << name << ">\n";
  }

 private:
  void indent() {
    for (int i = 0; i < depth_; ++i) out_ << "  ";
  }

  std::ostream& out_;
  int depth_ = 0;
};

std::string join_ids(const std::vector<std::uint32_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

void write_comment(XmlWriter& w, std::string_view slot, const CommentSpec& c) {
  if (c.kind == CommentKind::BlankLines) {
    w.open(slot, {{"kind", std::string(to_string(c.kind))}, {"lines", std::to_string(c.lines)}}, true);
  } else {
    w.text_element(slot, {{"kind", std::string(to_string(c.kind))}}, c.text);
  }
}

void write_node(XmlWriter& w, const dtree::Schema& schema, const dtree::Node& n) {
  if (n.is_leaf()) {
    std::string counts = std::to_string(n.counts[0]) + ',' + std::to_string(n.counts[1]) + ',' +
                         std::to_string(n.counts[2]);
    w.open("leaf", {{"label", std::string(to_string(n.label))}, {"counts", counts}}, true);
    return;
  }
  const dtree::Attribute& a = schema.attributes[static_cast<std::size_t>(n.attribute)];
  std::string counts = std::to_string(n.counts[0]) + ',' + std::to_string(n.counts[1]) + ',' +
                       std::to_string(n.counts[2]);
  w.open("split", {{"attr", a.name}, {"counts", counts}});
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    w.open("branch", {{"value", a.values[n.branch_values[i]]}});
    write_node(w, schema, n.children[i]);
    w.close("branch");
  }
  w.close("split");
}

// ---- reading ----

std::string attr(const pt::ptree& node, const std::string& name, const std::string& where,
                 bool required = true) {
  const auto attrs = node.get_child_optional(std::string(kAttr));
  if (attrs) {
    if (auto v = attrs->get_optional<std::string>(name)) return *v;
  }
  if (required) throw SchemaError(where, "missing attribute " + name);
  return {};
}

bool has_attr(const pt::ptree& node, const std::string& name) {
  const auto attrs = node.get_child_optional(std::string(kAttr));
  return attrs && attrs->get_child_optional(name);
}

bool skippable(const std::string& key) { return key == kAttr || key == "<xmlcomment>"; }

int parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size() || v < 0 || v > 0x7fffffff) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw SchemaError(where, "expected a non-negative integer, got '" + s + "'");
  }
}

CommentSpec read_comment(const pt::ptree& node, const std::string& where) {
  const std::string kind_name = attr(node, "kind", where);
  const auto kind = parse_comment_kind(kind_name);
  if (!kind) throw SchemaError(where, "unknown comment kind " + kind_name);
  CommentSpec c;
  c.kind = *kind;
  if (c.kind == CommentKind::BlankLines) {
    c.lines = parse_int(attr(node, "lines", where), where);
  } else {
    c.lines = 0;
    c.text = node.data();
  }
  return c;
}

Category read_category(const pt::ptree& node, Context ctx, const std::string& where) {
  Category c;
  c.context = ctx;
  for (const auto& t : split(attr(node, "types", where), ',')) {
    const auto k = parse_kind(t);
    if (!k) throw SchemaError(where, "unknown component type " + t);
    c.types.insert(*k);
  }
  if (c.types.empty()) throw SchemaError(where, "category has no types");
  for (const auto& [key, child] : node) {
    if (skippable(key)) continue;
    if (key != "prop") throw SchemaError(where + "/" + key, "unexpected element");
    const std::string pwhere = where + "/prop";
    const std::string name = attr(child, "name", pwhere);
    const auto p = parse_category_prop(name);
    if (!p) throw SchemaError(pwhere, "unknown property " + name);
    std::uint32_t mask = 0;
    const auto& domain = prop_domain(*p);
    for (const auto& v : split(attr(child, "values", pwhere), ',')) {
      const auto it = std::find(domain.begin(), domain.end(), v);
      if (it == domain.end()) throw SchemaError(pwhere, "value " + v + " not valid for " + name);
      mask |= 1u << (it - domain.begin());
    }
    if (mask == 0) throw SchemaError(pwhere, "property " + name + " allows no value");
    c.restrict(*p, mask);
  }
  return c;
}

const pt::ptree& only_element(const pt::ptree& node, const std::string& where,
                              std::string& key_out) {
  const pt::ptree* found = nullptr;
  for (const auto& [key, child] : node) {
    if (skippable(key)) continue;
    if (found) throw SchemaError(where, "expected exactly one element");
    found = &child;
    key_out = key;
  }
  if (!found) throw SchemaError(where, "expected exactly one element");
  return *found;
}

dtree::Node read_node(const pt::ptree& node, const std::string& key, const dtree::Schema& schema,
                      std::vector<bool>& used, const std::string& where) {
  dtree::Node n;
  auto read_counts = [&] {
    const auto parts = split(attr(node, "counts", where), ',');
    if (parts.size() != 3) throw SchemaError(where, "counts needs three numbers");
    for (std::size_t i = 0; i < 3; ++i) n.counts[i] = static_cast<std::uint32_t>(parse_int(parts[i], where));
  };
  if (key == "leaf") {
    const std::string label = attr(node, "label", where);
    const auto l = dtree::parse_label(label);
    if (!l) throw SchemaError(where, "unknown label " + label);
    n.label = *l;
    if (has_attr(node, "counts")) read_counts();
    return n;
  }
  if (key != "split") throw SchemaError(where + "/" + key, "expected split or leaf");
  const std::string name = attr(node, "attr", where);
  if (name == "INDEX") throw SchemaError(where, "ordering trees must not test INDEX");
  const auto a = schema.find(name);
  if (!a) throw SchemaError(where, "unknown attribute " + name);
  if (used[*a]) throw SchemaError(where, "attribute " + name + " tested twice on one path");
  used[*a] = true;
  n.attribute = static_cast<int>(*a);
  const dtree::Attribute& attribute = schema.attributes[*a];
  for (const auto& [bkey, branch] : node) {
    if (skippable(bkey)) continue;
    const std::string bwhere = where + "/branch";
    if (bkey != "branch") throw SchemaError(where + "/" + bkey, "expected branch");
    const std::string value = attr(branch, "value", bwhere);
    const auto v = attribute.find(value);
    if (!v) throw SchemaError(bwhere, "value " + value + " not valid for " + name);
    if (std::find(n.branch_values.begin(), n.branch_values.end(), *v) != n.branch_values.end()) {
      throw SchemaError(bwhere, "duplicate branch " + value);
    }
    std::string ckey;
    const auto& child = only_element(branch, bwhere, ckey);
    n.branch_values.push_back(*v);
    n.children.push_back(read_node(child, ckey, schema, used, bwhere + "/" + ckey));
  }
  used[*a] = false;
  if (n.children.empty()) throw SchemaError(where, "split without branches");
  if (has_attr(node, "counts")) {
    read_counts();
  } else {
    for (const auto& c : n.children) {
      for (std::size_t i = 0; i < 3; ++i) n.counts[i] += c.counts[i];
    }
  }
  n.label = majority(n.counts);
  return n;
}

RegionSpec read_region(const pt::ptree& node, Context ctx, const std::string& where) {
  RegionSpec r;
  for (const auto& id : split(attr(node, "ids", where), ',')) {
    r.ids.push_back(static_cast<std::uint32_t>(parse_int(id, where)));
  }
  if (r.ids.empty()) throw SchemaError(where, "region without ids");
  bool seen[3] = {false, false, false};
  for (const auto& [key, child] : node) {
    if (skippable(key)) continue;
    const std::string cwhere = where + "/" + key;
    if (key == "category") {
      r.categories.push_back(read_category(child, ctx, cwhere));
    } else if (key == "prefix" || key == "between" || key == "suffix") {
      const int slot = key == "prefix" ? 0 : (key == "between" ? 1 : 2);
      if (seen[slot]) throw SchemaError(cwhere, "duplicate element");
      seen[slot] = true;
      CommentSpec& target = slot == 0 ? r.prefix : (slot == 1 ? r.between : r.suffix);
      target = read_comment(child, cwhere);
    } else if (key == "ordering") {
      if (r.ordering) throw SchemaError(cwhere, "duplicate element");
      dtree::DecisionTree t;
      t.schema = ordering_schema({});
      std::vector<bool> used(t.schema.size(), false);
      std::string tkey;
      const auto& root = only_element(child, cwhere, tkey);
      t.root = read_node(root, tkey, t.schema, used, cwhere + "/" + tkey);
      r.ordering = std::move(t);
    } else {
      throw SchemaError(cwhere, "unexpected element");
    }
  }
  if (r.categories.empty()) throw SchemaError(where, "region without category");
  return r;
}

}  // namespace

bool RegionSpec::matches(Context ctx, const ComponentTraits& t) const {
  return std::any_of(categories.begin(), categories.end(),
                     [&](const Category& c) { return c.matches(ctx, t); });
}

const std::vector<RegionSpec>& OrderModel::regions(Context ctx) const {
  static const std::vector<RegionSpec> empty;
  auto it = contexts.find(ctx);
  return it == contexts.end() ? empty : it->second;
}

std::size_t OrderModel::find_region(Context ctx, const ComponentTraits& t) const {
  const auto& rs = regions(ctx);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].matches(ctx, t)) return i;
  }
  throw NoRegion(ctx, t.kind);
}

NoRegion::NoRegion(Context ctx, Kind kind)
    : std::runtime_error("no region of " + std::string(to_string(ctx)) + " matches a " +
                         std::string(to_string(kind))) {}

SchemaError::SchemaError(std::string element, std::string reason)
    : std::runtime_error(element + ": " + reason),
      element_(std::move(element)),
      reason_(std::move(reason)) {}

CoverageError::CoverageError(Context ctx, Kind kind)
    : std::runtime_error("no region of " + std::string(to_string(ctx)) + " covers every " +
                         std::string(to_string(kind))),
      context_(ctx),
      kind_(kind) {}

std::optional<dtree::DecisionTree> group_ordering(const dtree::DecisionTree& order_tree,
                                                  const dtree::Dataset& rows,
                                                  const std::vector<std::uint32_t>& ids) {
  const dtree::Schema target = ordering_schema({});
  const auto index = order_tree.schema.find("INDEX");

  std::vector<dtree::DecisionTree> specs;
  std::vector<dtree::Value> index_values;
  for (auto id : ids) {
    const std::string name = std::to_string(id);
    dtree::DecisionTree s = index ? dtree::specialize(order_tree, "INDEX", name) : order_tree;
    specs.push_back(dtree::rebase(s, target));
    if (index) {
      if (auto v = order_tree.schema.attributes[*index].find(name)) index_values.push_back(*v);
    }
  }

  std::vector<std::vector<dtree::Value>> group_rows;
  for (const auto& row : rows.rows) {
    if (index) {
      if (std::find(index_values.begin(), index_values.end(), row.values[*index]) ==
          index_values.end()) {
        continue;
      }
      std::vector<dtree::Value> v(row.values.begin(), row.values.end());
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(*index));
      group_rows.push_back(std::move(v));
    } else {
      group_rows.push_back(row.values);
    }
  }
  if (group_rows.empty()) return std::nullopt;

  dtree::DecisionTree merged = specs.front();
  for (const auto& row : group_rows) {
    const dtree::Label first = dtree::classify(specs.front(), row);
    const bool agree = std::all_of(specs.begin() + 1, specs.end(), [&](const auto& s) {
      return dtree::classify(s, row) == first;
    });
    if (!agree) dtree::node_at(merged.root, dtree::leaf_path_for(merged, row)).label = dtree::Label::Equal;
  }
  merged = dtree::cleanup_consistency(std::move(merged), swap_map(target));
  const bool all_equal = std::all_of(group_rows.begin(), group_rows.end(), [&](const auto& row) {
    return dtree::classify(merged, row) == dtree::Label::Equal;
  });
  if (all_equal) return std::nullopt;
  simplify(merged.root);
  return merged;
}

OrderModel assemble_model(const AssembleInput& in) {
  if (!in.groups || !in.table || !in.samples || !in.patterns) {
    throw InconsistentInput("assemble_model needs groups, regions, samples and patterns");
  }
  OrderModel m;
  m.patterns = *in.patterns;
  for (Context ctx : kAllContexts) {
    auto& specs = m.contexts[ctx];
    const auto git = in.groups->find(ctx);
    if (git == in.groups->end()) continue;
    const auto gaps_it = in.samples->gaps.find(ctx);
    const std::vector<int> gaps = gaps_it == in.samples->gaps.end() ? std::vector<int>{} : gaps_it->second;
    for (const auto& group : git->second) {
      RegionSpec spec;
      spec.ids = group;
      std::vector<std::string> prefix, between, suffix;
      for (auto id : group) {
        const Region* r = in.table->by_id(id);
        if (!r) throw InconsistentInput("group references unknown region " + std::to_string(id));
        if (r->category.context != ctx) {
          throw InconsistentInput("region " + std::to_string(id) + " is not in " + std::string(to_string(ctx)));
        }
        spec.categories.push_back(r->category);
        auto append = [&](std::vector<std::string>& to, Slot slot) {
          const auto& s = in.samples->get(id, slot);
          to.insert(to.end(), s.begin(), s.end());
        };
        append(prefix, Slot::Prefix);
        append(between, Slot::Between);
        append(suffix, Slot::Suffix);
      }
      spec.prefix = infer_comment(prefix, gaps, in.mode);
      spec.between = infer_comment(between, gaps, in.mode);
      // A region never followed by another one has no suffix evidence; it
      // gets an empty suffix rather than padding blank lines.
      spec.suffix = suffix.empty() ? CommentSpec{CommentKind::Literal, {}, 0}
                                   : infer_comment(suffix, gaps, in.mode);
      if (in.order_tree && in.order_rows) spec.ordering = group_ordering(*in.order_tree, *in.order_rows, group);
      specs.push_back(std::move(spec));
    }
  }
  return m;
}

void check_coverage(const OrderModel& m) {
  for (Context ctx : kAllContexts) {
    const auto& rs = m.regions(ctx);
    for (const auto& t : possible_traits()) {
      const bool covered =
          std::any_of(rs.begin(), rs.end(), [&](const RegionSpec& r) { return r.matches(ctx, t); });
      if (!covered) throw CoverageError(ctx, t.kind);
    }
  }
}

std::string xml_escape(std::string_view s, bool attribute) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\r':
        out += "&#13;";
        break;
      case '\n':
        out += attribute ? "&#10;" : "\n";
        break;
      case '\t':
        out += attribute ? "&#9;" : "\t";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void write_model(std::ostream& out, const OrderModel& m) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  XmlWriter w(out);
  w.open("ordermodel", {{"version", "1"},
                        {"corpus", m.meta.corpus},
                        {"files", std::to_string(m.meta.file_count)},
                        {"created", m.meta.created}});
  w.open("patterns", {});
  for (PatternKey k : kAllPatternKeys) {
    w.open("pattern", {{"key", std::string(to_string(k))}, {"regex", m.patterns.pattern(k)}}, true);
  }
  w.close("patterns");
  for (const auto& [ctx, regions] : m.contexts) {
    w.open("context", {{"name", std::string(to_string(ctx))}});
    for (const auto& r : regions) {
      w.open("region", {{"ids", join_ids(r.ids)}});
      for (const auto& c : r.categories) {
        std::string types;
        for (Kind k : c.types) types += (types.empty() ? "" : ",") + std::string(to_string(k));
        if (c.props.empty()) {
          w.open("category", {{"types", types}}, true);
          continue;
        }
        w.open("category", {{"types", types}});
        for (const auto& [p, mask] : c.props) {
          std::string values;
          const auto& domain = prop_domain(p);
          for (std::size_t v = 0; v < domain.size(); ++v) {
            if (mask & (1u << v)) values += (values.empty() ? "" : ",") + domain[v];
          }
          w.open("prop", {{"name", std::string(to_string(p))}, {"values", values}}, true);
        }
        w.close("category");
      }
      write_comment(w, "prefix", r.prefix);
      write_comment(w, "between", r.between);
      write_comment(w, "suffix", r.suffix);
      if (r.ordering) {
        w.open("ordering", {});
        write_node(w, r.ordering->schema, r.ordering->root);
        w.close("ordering");
      }
      w.close("region");
    }
    w.close("context");
  }
  w.close("ordermodel");
}

void write_model(const std::filesystem::path& path, const OrderModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_model(out, m);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

OrderModel read_model(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw SchemaError("line " + std::to_string(e.line()), e.message());
  }
  const auto root = tree.get_child_optional("ordermodel");
  if (!root) throw SchemaError("ordermodel", "missing root element");
  const std::string where = "ordermodel";
  if (attr(*root, "version", where) != "1") throw SchemaError(where, "unsupported version");

  OrderModel m;
  m.meta.corpus = attr(*root, "corpus", where, false);
  if (has_attr(*root, "files")) m.meta.file_count = static_cast<std::uint64_t>(parse_int(attr(*root, "files", where), where));
  m.meta.created = attr(*root, "created", where, false);

  for (const auto& [key, node] : *root) {
    if (skippable(key)) continue;
    if (key == "patterns") {
      for (const auto& [pkey, p] : node) {
        if (skippable(pkey)) continue;
        const std::string pwhere = where + "/patterns/" + pkey;
        if (pkey != "pattern") throw SchemaError(pwhere, "unexpected element");
        const std::string name = attr(p, "key", pwhere);
        const auto k = parse_pattern_key(name);
        if (!k) throw SchemaError(pwhere, "unknown pattern key " + name);
        try {
          m.patterns.set(*k, attr(p, "regex", pwhere));
        } catch (const PatternError& e) {
          throw SchemaError(pwhere, e.what());
        }
      }
    } else if (key == "context") {
      const std::string name = attr(node, "name", where + "/context");
      const auto ctx = parse_context(name);
      const std::string cwhere = where + "/context[" + name + "]";
      if (!ctx) throw SchemaError(cwhere, "unknown context");
      if (m.contexts.contains(*ctx)) throw SchemaError(cwhere, "duplicate context");
      auto& regions = m.contexts[*ctx];
      for (const auto& [rkey, r] : node) {
        if (skippable(rkey)) continue;
        const std::string rwhere = cwhere + "/region[" + std::to_string(regions.size() + 1) + "]";
        if (rkey != "region") throw SchemaError(cwhere + "/" + rkey, "unexpected element");
        regions.push_back(read_region(r, *ctx, rwhere));
      }
    } else {
      throw SchemaError(where + "/" + key, "unexpected element");
    }
  }
  check_coverage(m);
  return m;
}

OrderModel read_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_model(in);
}

}  // namespace ordo
