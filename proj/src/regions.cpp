#include "ordo/regions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <sstream>

namespace ordo {

namespace {

bool carries_name_flags(Kind k) { return k == Kind::Method; }

bool is_name_flag(CategoryProp p) {
  return p == CategoryProp::Access || p == CategoryProp::Factory || p == CategoryProp::Output ||
         p == CategoryProp::Main;
}

// Base properties the category tree consults for components of `kind` in
// `ctx`, looking at both the From and the To side.
std::set<CategoryProp> consulted_props(const dtree::DecisionTree& tree, Context ctx, Kind kind) {
  const dtree::Schema& schema = tree.schema;
  const std::size_t nested = schema.index("NESTED");
  std::set<CategoryProp> out;
  for (std::string_view side : {"From", "To"}) {
    const std::size_t type = schema.index(std::string(side) + "TYPE");
    dtree::Constraints filter;
    filter[nested].assign(schema.attributes[nested].values.size(), false);
    filter[nested][static_cast<std::size_t>(ctx)] = true;
    filter[type].assign(schema.attributes[type].values.size(), false);
    filter[type][static_cast<std::size_t>(kind)] = true;
    for (const auto& name : dtree::used_attributes(tree, filter)) {
      if (!name.starts_with(side)) continue;
      const auto p = parse_category_prop(std::string_view(name).substr(side.size()));
      if (p && (carries_name_flags(kind) || !is_name_flag(*p))) out.insert(*p);
    }
  }
  return out;
}

int specificity(const Region& r) {
  if (r.catch_all) return -1;
  return static_cast<int>(r.category.props.size());
}

template <typename Table>
auto find_in(Table& table, Context ctx, const ComponentTraits& t) -> decltype(&table.regions[0]) {
  decltype(&table.regions[0]) best = nullptr;
  for (auto& r : table.regions) {
    if (!r.category.matches(ctx, t)) continue;
    if (!best || specificity(r) > specificity(*best)) best = &r;
  }
  return best;
}

// Properties whose allowed sets differ between two categories.
std::vector<CategoryProp> differing_props(const Category& a, const Category& b) {
  std::vector<CategoryProp> out;
  for (CategoryProp p : kAllCategoryProps) {
    if (a.allowed(p) != b.allowed(p)) out.push_back(p);
  }
  return out;
}

void order_region(const SourceFile& file, const Component& container, RegionTable& table,
                  const NamePatternConfig& cfg, AssignResult& result, std::size_t file_index) {
  std::uint32_t prev = kNoRegion;
  bool first = true;
  for (const Component& e : container.children) {
    if (e.is_type()) order_region(file, e, table, cfg, result, file_index);
    Region* r = table.find(e.context, traits_of(cfg, e));
    if (!r) throw std::logic_error("no region covers a component of " + file.path.string());
    ++r->members;
    result.assignment[file_index][e.id] = r->id;
    if (!first) result.samples.gaps[e.context].push_back(gap_size(e.leading_text));
    if (r->id != prev) {
      if (prev != kNoRegion) {
        result.graph.add(prev, r->id);
        auto [suffix, prefix] = split_boundary_text(e.leading_text);
        result.samples.add(prev, Slot::Suffix, std::move(suffix));
        result.samples.add(r->id, Slot::Prefix, std::move(prefix));
      } else {
        result.samples.add(r->id, Slot::Prefix, e.leading_text);
      }
      prev = r->id;
    } else {
      result.samples.add(r->id, Slot::Between, e.leading_text);
    }
    first = false;
  }
}

// Regions of `ctx` that can reach each other form a strongly connected
// component; a source component has no arcs entering from outside it.
std::vector<std::uint32_t> source_component(const std::vector<std::uint32_t>& remaining,
                                            const RegionGraph& clean) {
  auto reach = [&](std::uint32_t start, bool forward) {
    std::set<std::uint32_t> seen{start};
    std::deque<std::uint32_t> queue{start};
    while (!queue.empty()) {
      const auto n = queue.front();
      queue.pop_front();
      for (auto m : remaining) {
        const bool arc = forward ? clean.weight(n, m) > 0 : clean.weight(m, n) > 0;
        if (arc && seen.insert(m).second) queue.push_back(m);
      }
    }
    return seen;
  };
  std::vector<std::uint32_t> out;
  for (auto v : remaining) {
    const auto ancestors = reach(v, false);
    const auto descendants = reach(v, true);
    if (std::includes(descendants.begin(), descendants.end(), ancestors.begin(), ancestors.end())) {
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

std::uint32_t Category::full_mask(CategoryProp p) {
  return (1u << prop_domain(p).size()) - 1;
}

std::uint32_t Category::allowed(CategoryProp p) const {
  auto it = props.find(p);
  return it == props.end() ? full_mask(p) : it->second;
}

void Category::restrict(CategoryProp p, std::uint32_t mask) {
  mask &= full_mask(p);
  if (mask == full_mask(p)) {
    props.erase(p);
  } else {
    props[p] = mask;
  }
}

bool Category::matches(Context ctx, const ComponentTraits& t) const {
  if (ctx != context || !types.contains(t.kind)) return false;
  for (const auto& [p, mask] : props) {
    if (!(mask & (1u << prop_value(p, t)))) return false;
  }
  return true;
}

const Region* RegionTable::find(Context ctx, const ComponentTraits& t) const {
  return find_in(*this, ctx, t);
}

Region* RegionTable::find(Context ctx, const ComponentTraits& t) { return find_in(*this, ctx, t); }

const Region* RegionTable::by_id(std::uint32_t id) const {
  for (const auto& r : regions) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::uint32_t RegionGraph::weight(std::uint32_t from, std::uint32_t to) const {
  auto it = arcs.find({from, to});
  return it == arcs.end() ? 0 : it->second;
}

RegionTable build_initial_regions(const dtree::DecisionTree& category_tree) {
  RegionTable table;
  for (Context ctx : kAllContexts) {
    for (Kind kind : kAllKinds) {
      const auto props = consulted_props(category_tree, ctx, kind);
      std::vector<Category> cells(1);
      cells[0].context = ctx;
      cells[0].types = {kind};
      for (CategoryProp p : props) {
        std::vector<Category> next;
        for (const auto& c : cells) {
          for (std::size_t v = 0; v < prop_domain(p).size(); ++v) {
            Category d = c;
            d.restrict(p, 1u << v);
            next.push_back(std::move(d));
          }
        }
        cells = std::move(next);
      }
      for (auto& c : cells) table.regions.push_back({table.next_id++, std::move(c), 0, false});
    }
  }
  return table;
}

AssignResult assign_regions(RegionTable& table, std::span<const SourceFile> corpus,
                            const NamePatternConfig& cfg) {
  AssignResult result;
  result.assignment.resize(corpus.size());
  for (std::size_t f = 0; f < corpus.size(); ++f) {
    const SourceFile& file = corpus[f];
    result.assignment[f].assign(file.component_count, kNoRegion);
    for (const Component& top : file.top_level) order_region(file, top, table, cfg, result, f);
  }
  return result;
}

void merge_empty_regions(RegionTable& table) {
  std::vector<bool> removed(table.regions.size(), false);
  for (std::size_t i = 0; i < table.regions.size(); ++i) {
    const Region& empty = table.regions[i];
    if (empty.members != 0 || empty.catch_all) continue;
    for (std::size_t j = 0; j < table.regions.size(); ++j) {
      Region& partner = table.regions[j];
      if (removed[j] || partner.members == 0 || partner.catch_all) continue;
      if (partner.category.context != empty.category.context ||
          partner.category.types != empty.category.types) {
        continue;
      }
      const auto diff = differing_props(partner.category, empty.category);
      if (diff.size() != 1) continue;
      const CategoryProp p = diff[0];
      partner.category.restrict(p, partner.category.allowed(p) | empty.category.allowed(p));
      break;
    }
    removed[i] = true;
  }
  std::vector<Region> kept;
  for (std::size_t i = 0; i < table.regions.size(); ++i) {
    if (!removed[i]) kept.push_back(std::move(table.regions[i]));
  }
  table.regions = std::move(kept);
}

bool has_coverage_hole(const RegionTable& table, Context ctx) {
  for (const auto& t : possible_traits()) {
    if (!table.find(ctx, t)) return true;
  }
  return false;
}

int add_catch_all_regions(RegionTable& table) {
  int added = 0;
  for (Context ctx : kAllContexts) {
    if (!has_coverage_hole(table, ctx)) continue;
    Region r;
    r.id = table.next_id++;
    r.category.context = ctx;
    r.category.types = {kAllKinds.begin(), kAllKinds.end()};
    r.catch_all = true;
    table.regions.push_back(std::move(r));
    ++added;
  }
  return added;
}

bool significant(std::uint32_t a, std::uint32_t b, const RegionGraph& g, std::uint32_t min_arc) {
  const std::uint32_t w1 = g.weight(a, b);
  const std::uint32_t n = w1 + g.weight(b, a);
  return w1 >= min_arc && w1 > n / 2.0 + std::sqrt(static_cast<double>(n)) / 2.0;
}

RegionGraph clean_graph(const RegionGraph& g, std::uint32_t min_arc) {
  RegionGraph out;
  for (const auto& [arc, w] : g.arcs) {
    if (significant(arc.first, arc.second, g, min_arc)) out.arcs[arc] = w;
  }
  return out;
}

RegionGroups top_sort_merge(const RegionGraph& clean, const RegionGraph& full,
                            const RegionTable& table, std::uint32_t min_arc) {
  RegionGroups out;
  for (Context ctx : kAllContexts) {
    std::vector<std::uint32_t> remaining;
    std::vector<std::uint32_t> catch_all;
    for (const auto& r : table.regions) {
      if (r.category.context != ctx) continue;
      (r.catch_all ? catch_all : remaining).push_back(r.id);
    }
    std::sort(remaining.begin(), remaining.end());

    auto& groups = out[ctx];
    std::optional<std::uint32_t> prev;
    auto emit = [&](std::uint32_t n) {
      if (!prev || significant(*prev, n, full, min_arc)) {
        groups.push_back({n});
      } else {
        groups.back().push_back(n);
      }
      prev = n;
      remaining.erase(std::find(remaining.begin(), remaining.end(), n));
    };

    while (!remaining.empty()) {
      auto incoming = [&](std::uint32_t n) {
        std::uint64_t w = 0;
        for (auto m : remaining) w += clean.weight(m, n);
        return w;
      };
      std::optional<std::uint32_t> ready;
      for (auto n : remaining) {
        if (incoming(n) == 0) {
          ready = n;
          break;
        }
      }
      if (!ready) {
        for (auto n : source_component(remaining, clean)) {
          if (!ready || incoming(n) < incoming(*ready)) ready = n;
        }
      }
      emit(*ready);
    }
    for (auto id : catch_all) groups.push_back({id});
  }
  return out;
}

std::string describe(const Category& c) {
  std::ostringstream out;
  out << to_string(c.context) << " [";
  bool first = true;
  for (Kind k : c.types) {
    out << (first ? "" : ",") << to_string(k);
    first = false;
  }
  out << ']';
  for (const auto& [p, mask] : c.props) {
    out << ' ' << to_string(p) << '=';
    bool first_value = true;
    for (std::size_t v = 0; v < prop_domain(p).size(); ++v) {
      if (!(mask & (1u << v))) continue;
      out << (first_value ? "" : "|") << prop_domain(p)[v];
      first_value = false;
    }
  }
  return out.str();
}

void write_regions(std::ostream& out, const RegionTable& table, const RegionGraph& g) {
  for (const auto& r : table.regions) {
    out << r.id << '\t' << describe(r.category) << '\t' << r.members
        << (r.catch_all ? "\tcatch-all" : "") << '\n';
  }
  for (const auto& [arc, w] : g.arcs) out << arc.first << " -> " << arc.second << '\t' << w << '\n';
}

}  // namespace ordo
