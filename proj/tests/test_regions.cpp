#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "ordo/regions.hpp"

using namespace ordo;

namespace {

dtree::Node leaf() {
  dtree::Node n;
  n.label = dtree::Label::Equal;
  n.counts = {0, 0, 1};
  return n;
}

// A node splitting on `attr` with one leaf (or `child`) under every value.
dtree::Node split(const std::string& attr, const dtree::Node& child = leaf()) {
  const auto& schema = category_schema();
  dtree::Node n;
  n.attribute = static_cast<int>(schema.index(attr));
  n.counts = {0, 0, 1};
  for (std::size_t v = 0; v < schema.attributes[n.attribute].values.size(); ++v) {
    n.branch_values.push_back(static_cast<dtree::Value>(v));
    n.children.push_back(child);
  }
  return n;
}

dtree::DecisionTree tree(dtree::Node root) {
  dtree::DecisionTree t;
  t.schema = category_schema();
  t.root = std::move(root);
  return t;
}

std::size_t count_cells(const RegionTable& table, Context ctx, Kind kind) {
  return std::count_if(table.regions.begin(), table.regions.end(), [&](const Region& r) {
    return r.category.context == ctx && r.category.types == std::set<Kind>{kind};
  });
}

ComponentTraits traits(Kind kind, bool is_static) {
  ComponentTraits t;
  t.kind = kind;
  t.is_static = is_static;
  return t;
}

Region region(std::uint32_t id, std::set<Kind> types, std::map<CategoryProp, std::uint32_t> props,
              std::uint32_t members) {
  Region r;
  r.id = id;
  r.category.context = Context::Class;
  r.category.types = std::move(types);
  r.category.props = std::move(props);
  r.members = members;
  return r;
}

RegionTable class_table(std::uint32_t n) {
  RegionTable t;
  for (std::uint32_t i = 0; i < n; ++i) t.regions.push_back(region(i, {Kind::Method}, {}, 1));
  t.next_id = n;
  return t;
}

// Integer form of "w1 >= min and w1 exceeds n/2 by more than sqrt(n)/2".
bool significant_oracle(std::uint64_t w1, std::uint64_t w2, std::uint64_t min_arc = 4) {
  const std::uint64_t n = w1 + w2;
  const std::int64_t excess = 2 * static_cast<std::int64_t>(w1) - static_cast<std::int64_t>(n);
  return w1 >= min_arc && excess > 0 && static_cast<std::uint64_t>(excess * excess) > n;
}

}  // namespace

TEST_CASE("a single-leaf tree gives one region per context and kind") {
  const auto table = build_initial_regions(tree(leaf()));
  CHECK(table.regions.size() == kAllContexts.size() * kAllKinds.size());
  for (std::size_t i = 0; i < table.regions.size(); ++i) {
    CHECK(table.regions[i].id == i);
    CHECK(table.regions[i].category.props.empty());
    CHECK(table.regions[i].members == 0);
  }
  CHECK(table.next_id == table.regions.size());
  CHECK(table.regions[0].category.context == Context::Class);
  CHECK(table.regions[1].category.types == std::set<Kind>{kAllKinds[1]});
}

TEST_CASE("a STATIC split gives two regions per kind") {
  const auto table = build_initial_regions(tree(split("FromSTATIC")));
  CHECK(count_cells(table, Context::Class, Kind::Method) == 2);
  CHECK(count_cells(table, Context::Interface, Kind::Field) == 2);
  const Region* s = table.find(Context::Class, traits(Kind::Method, true));
  const Region* i = table.find(Context::Class, traits(Kind::Method, false));
  REQUIRE(s);
  REQUIRE(i);
  CHECK(s != i);
  CHECK(s->category.props.size() == 1);
}

TEST_CASE("PROTECT and STATIC give eight regions") {
  const auto table = build_initial_regions(tree(split("FromPROTECT", split("FromSTATIC"))));
  CHECK(count_cells(table, Context::Class, Kind::Method) == 8);
  CHECK(table.regions.size() == kAllContexts.size() * kAllKinds.size() * 8);
}

TEST_CASE("To-side splits count as evidence for the base property") {
  const auto table = build_initial_regions(tree(split("ToSTATIC")));
  CHECK(count_cells(table, Context::Class, Kind::Field) == 2);
}

TEST_CASE("name flags only split methods") {
  const auto table = build_initial_regions(tree(split("FromACCESS")));
  CHECK(count_cells(table, Context::Class, Kind::Method) == 2);
  CHECK(count_cells(table, Context::Class, Kind::Field) == 1);
}

TEST_CASE("splits under a context only affect that context") {
  dtree::Node root = split("NESTED");
  root.children[static_cast<std::size_t>(Context::Interface)] = split("FromSTATIC");
  const auto table = build_initial_regions(tree(root));
  CHECK(count_cells(table, Context::Interface, Kind::Field) == 2);
  CHECK(count_cells(table, Context::Class, Kind::Field) == 1);
}

TEST_CASE("every possible component is covered after construction") {
  for (const auto& t : {tree(leaf()), tree(split("FromPROTECT", split("FromMAIN"))), tree(split("ToOUTPUT"))}) {
    const auto table = build_initial_regions(t);
    for (Context ctx : kAllContexts) CHECK_FALSE(has_coverage_hole(table, ctx));
  }
}

TEST_CASE("assignment records transitions and comment samples") {
  auto table = build_initial_regions(tree(split("FromSTATIC")));
  const std::vector<SourceFile> corpus = {
      parse_file("A.java", "class A {\n    static int s;\n    int x;\n    int y;\n}\n"),
      parse_file("B.java", "class B {}\n")};
  const auto result = assign_regions(table, corpus, {});
  const Region* s = table.find(Context::Class, traits(Kind::Field, true));
  const Region* i = table.find(Context::Class, traits(Kind::Field, false));
  CHECK(s->members == 1);
  CHECK(i->members == 2);
  CHECK(result.graph.arcs.size() == 1);
  CHECK(result.graph.weight(s->id, i->id) == 1);
  CHECK(result.samples.get(s->id, Slot::Prefix).size() == 1);
  CHECK(result.samples.get(i->id, Slot::Between).size() == 1);
  CHECK(result.assignment[0][corpus[0].top_level[0].children[1].id] == i->id);
  CHECK(result.assignment[0][corpus[0].top_level[0].id] == kNoRegion);
  CHECK(result.assignment[1].size() == corpus[1].component_count);
}

TEST_CASE("an empty region merges into its single-difference partner") {
  RegionTable table;
  const std::uint32_t t_mask = 1u << prop_value(CategoryProp::Static, traits(Kind::Method, true));
  const std::uint32_t f_mask = 1u << prop_value(CategoryProp::Static, traits(Kind::Method, false));
  table.regions.push_back(region(4, {Kind::Method}, {{CategoryProp::Static, t_mask}}, 0));
  table.regions.push_back(region(5, {Kind::Method}, {{CategoryProp::Static, f_mask}}, 3));
  merge_empty_regions(table);
  REQUIRE(table.regions.size() == 1);
  CHECK(table.regions[0].id == 5);
  CHECK(table.regions[0].category.props.empty());
  CHECK(table.regions[0].category.matches(Context::Class, traits(Kind::Method, true)));
}

TEST_CASE("empty regions without a partner are deleted") {
  RegionTable table;
  table.regions.push_back(region(0, {Kind::Field}, {}, 0));
  table.regions.push_back(region(1, {Kind::Method}, {}, 2));
  merge_empty_regions(table);
  REQUIRE(table.regions.size() == 1);
  CHECK(table.regions[0].id == 1);

  auto unchanged = class_table(3);
  const auto before = unchanged.regions;
  merge_empty_regions(unchanged);
  CHECK(unchanged.regions == before);
}

TEST_CASE("catch-all regions fill coverage holes and come last") {
  auto table = class_table(1);
  CHECK(has_coverage_hole(table, Context::Class));
  CHECK(add_catch_all_regions(table) == static_cast<int>(kAllContexts.size()));
  for (Context ctx : kAllContexts) CHECK_FALSE(has_coverage_hole(table, ctx));
  // The specific region still wins for methods.
  CHECK(table.find(Context::Class, traits(Kind::Method, false))->id == 0);
  CHECK(table.find(Context::Class, traits(Kind::Field, false))->catch_all);
  const auto groups = top_sort_merge({}, {}, table);
  CHECK(groups.at(Context::Class).size() == 2);
  CHECK(table.by_id(groups.at(Context::Class).back()[0])->catch_all);
}

TEST_CASE("significance examples") {
  RegionGraph g;
  g.add(1, 2, 10);
  g.add(2, 1, 1);
  CHECK(significant(1, 2, g));
  CHECK_FALSE(significant(2, 1, g));
  RegionGraph few;
  few.add(1, 2, 3);
  CHECK_FALSE(significant(1, 2, few));
  few.add(1, 2, 1);
  CHECK(significant(1, 2, few));
  RegionGraph even;
  even.add(1, 2, 5);
  even.add(2, 1, 5);
  CHECK_FALSE(significant(1, 2, even));
  CHECK_FALSE(significant(2, 1, even));
  CHECK(significant(1, 2, few, 5) == false);
}

TEST_CASE("significance matches an integer oracle and is one-sided") {
  for (std::uint32_t w1 = 0; w1 < 60; ++w1) {
    for (std::uint32_t w2 = 0; w2 < 60; ++w2) {
      RegionGraph g;
      if (w1) g.add(1, 2, w1);
      if (w2) g.add(2, 1, w2);
      CHECK(significant(1, 2, g) == significant_oracle(w1, w2));
      CHECK_FALSE((significant(1, 2, g) && significant(2, 1, g)));
    }
  }
}

TEST_CASE("clean graph keeps exactly the significant arcs") {
  CHECK(clean_graph({}).arcs.empty());
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    RegionGraph g;
    for (int k = 0; k < 12; ++k) g.add(rng() % 5, rng() % 5, 1 + rng() % 8);
    const auto clean = clean_graph(g);
    for (const auto& [arc, w] : g.arcs) {
      const bool keep = significant_oracle(w, g.weight(arc.second, arc.first));
      CHECK(clean.arcs.contains(arc) == keep);
      if (keep) CHECK(clean.weight(arc.first, arc.second) == w);
      if (keep) CHECK_FALSE(clean.arcs.contains({arc.second, arc.first}));
    }
  }
}

TEST_CASE("a significant chain gives singleton groups") {
  const auto table = class_table(3);
  RegionGraph g;
  g.add(2, 1, 9);
  g.add(1, 0, 9);
  const auto groups = top_sort_merge(clean_graph(g), g, table);
  CHECK(groups.at(Context::Class) == std::vector<std::vector<std::uint32_t>>{{2}, {1}, {0}});
}

TEST_CASE("a region without a significant predecessor arc joins its group") {
  const auto table = class_table(3);
  RegionGraph g;
  g.add(0, 1, 9);
  g.add(1, 2, 2);
  const auto groups = top_sort_merge(clean_graph(g), g, table);
  CHECK(groups.at(Context::Class) == std::vector<std::vector<std::uint32_t>>{{0}, {1, 2}});
}

TEST_CASE("cycles are broken at the weakest incoming node") {
  const auto table = class_table(3);
  RegionGraph clean;
  clean.add(0, 1, 5);
  clean.add(1, 2, 7);
  clean.add(2, 0, 6);
  const auto groups = top_sort_merge(clean, clean, table);
  // Node 1 has the smallest incoming weight.
  CHECK(groups.at(Context::Class) == std::vector<std::vector<std::uint32_t>>{{1}, {2}, {0}});

  RegionGraph tie;
  tie.add(0, 1, 5);
  tie.add(1, 0, 5);
  const auto tied = top_sort_merge(tie, tie, class_table(2));
  CHECK(tied.at(Context::Class) == std::vector<std::vector<std::uint32_t>>{{0, 1}});
}

TEST_CASE("topological merge is total on random graphs") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t n = 1 + rng() % 9;
    auto table = class_table(n);
    if (rng() % 3 == 0) add_catch_all_regions(table);
    // Raw graphs may hold cycles; acyclic ones only point to higher ids
    // before a random relabeling.
    const bool raw = rng() % 2;
    std::vector<std::uint32_t> label(n);
    std::iota(label.begin(), label.end(), 0u);
    std::shuffle(label.begin(), label.end(), rng);
    RegionGraph g;
    const int arcs = static_cast<int>(rng() % (3 * n + 1));
    for (int k = 0; k < arcs; ++k) {
      std::uint32_t a = rng() % n;
      std::uint32_t b = rng() % n;
      if (!raw && a > b) std::swap(a, b);
      if (a != b) g.add(label[a], label[b], 1 + rng() % 10);
    }
    const auto groups = top_sort_merge(raw ? g : clean_graph(g), g, table);
    std::vector<std::uint32_t> seen;
    for (const auto& group : groups.at(Context::Class)) {
      CHECK_FALSE(group.empty());
      seen.insert(seen.end(), group.begin(), group.end());
    }
    std::vector<std::uint32_t> expected;
    for (const auto& r : table.regions) {
      if (r.category.context == Context::Class) expected.push_back(r.id);
    }
    std::sort(seen.begin(), seen.end());
    INFO("trial " << trial);
    CHECK(seen == expected);
    // Without cycles, every clean arc points forward.
    if (!raw) {
      std::map<std::uint32_t, std::size_t> pos;
      std::size_t k = 0;
      for (const auto& group : groups.at(Context::Class)) {
        for (auto id : group) pos[id] = k++;
      }
      for (const auto& [arc, w] : clean_graph(g).arcs) CHECK(pos[arc.first] < pos[arc.second]);
    }
  }
}

TEST_CASE("region dump lists ids, categories and arcs") {
  auto table = build_initial_regions(tree(split("FromSTATIC")));
  RegionGraph g;
  g.add(0, 1, 4);
  std::ostringstream out;
  write_regions(out, table, g);
  CHECK(out.str().find("STATIC") != std::string::npos);
  CHECK(out.str().find("0 -> 1") != std::string::npos);
}
