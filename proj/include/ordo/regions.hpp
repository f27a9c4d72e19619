#pragma once

// Region induction: candidate categories from the category tree, assignment
// of corpus components, merging of empty regions, and the precedence graph
// that linearizes regions per context.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "ordo/comments.hpp"
#include "ordo/dtree.hpp"
#include "ordo/extract.hpp"
#include "ordo/props.hpp"

namespace ordo {

struct Category {
  Context context = Context::Class;
  std::set<Kind> types;
  // Allowed values as a bit mask over prop_domain(); full masks are elided.
  std::map<CategoryProp, std::uint32_t> props;

  static std::uint32_t full_mask(CategoryProp p);
  std::uint32_t allowed(CategoryProp p) const;
  /// Sets the allowed mask, eliding the property when the mask is full.
  void restrict(CategoryProp p, std::uint32_t mask);
  bool matches(Context ctx, const ComponentTraits& t) const;

  bool operator==(const Category&) const = default;
};

inline constexpr std::uint32_t kNoRegion = 0xffffffffu;

struct Region {
  std::uint32_t id = 0;
  Category category;
  std::uint32_t members = 0;
  bool catch_all = false;  // added to keep every possible component covered

  bool operator==(const Region&) const = default;
};

struct RegionTable {
  std::vector<Region> regions;  // ascending id
  std::uint32_t next_id = 0;

  /// First match by specificity (more constrained properties first), then id;
  /// catch-all regions are tried last.
  const Region* find(Context ctx, const ComponentTraits& t) const;
  Region* find(Context ctx, const ComponentTraits& t);
  const Region* by_id(std::uint32_t id) const;
};

struct RegionGraph {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> arcs;

  std::uint32_t weight(std::uint32_t from, std::uint32_t to) const;
  void add(std::uint32_t from, std::uint32_t to, std::uint32_t w = 1) { arcs[{from, to}] += w; }
  bool operator==(const RegionGraph&) const = default;
};

RegionTable build_initial_regions(const dtree::DecisionTree& category_tree);

/// Region of every component, per file, indexed by component id
/// (kNoRegion for top-level types).
using Assignment = std::vector<std::vector<std::uint32_t>>;

struct AssignResult {
  RegionGraph graph;
  CommentSamples samples;
  Assignment assignment;
};

AssignResult assign_regions(RegionTable& table, std::span<const SourceFile> corpus,
                            const NamePatternConfig& cfg);

void merge_empty_regions(RegionTable& table);

/// Adds a catch-all region to every context where some possible component
/// matches no region. Returns the number added.
int add_catch_all_regions(RegionTable& table);

/// True when some possible component of `ctx` matches no region.
bool has_coverage_hole(const RegionTable& table, Context ctx);

bool significant(std::uint32_t a, std::uint32_t b, const RegionGraph& g, std::uint32_t min_arc = 4);

RegionGraph clean_graph(const RegionGraph& g, std::uint32_t min_arc = 4);

using RegionGroups = std::map<Context, std::vector<std::vector<std::uint32_t>>>;

/// Linear order of each context's regions as groups; regions without a
/// significant edge from their predecessor join the predecessor's group.
/// Catch-all regions come last as their own groups.
RegionGroups top_sort_merge(const RegionGraph& clean, const RegionGraph& full,
                            const RegionTable& table, std::uint32_t min_arc = 4);

void write_regions(std::ostream& out, const RegionTable& table, const RegionGraph& g);

std::string describe(const Category& c);

}  // namespace ordo
