#pragma once

// Placing a new component into an existing type, rewriting whole files into
// model order, and reporting order violations.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ordo/extract.hpp"
#include "ordo/model.hpp"

namespace ordo {

struct InsertionPlan {
  std::size_t position = 0;
  std::string prepend;
  std::string append;
  std::size_t region = 0;  // index into the container context's region list
  std::optional<std::size_t> prior;  // child indices in the container
  std::optional<std::size_t> next;
  bool region_end = true;  // no region-mate follows the insertion point
};

/// Region index of `e` as a member of a type whose members have context
/// `ctx`. Throws NoRegion.
std::size_t find_region_for(const OrderModel& m, Context ctx, const Component& e);

/// BEFORE when `a` belongs before `b` in `region`, AFTER when after, EQUAL
/// when the region has no ordering or the tree does not care.
dtree::Label compare_in_region(const OrderModel& m, const RegionSpec& region, const CallFacts& facts,
                               const Component& a, const Component& b);

/// The top-level type that contains `container` (or is it).
const Component* top_level_of(const SourceFile& file, const Component& container);

InsertionPlan plan_insertion(const OrderModel& m, const Component& container,
                             const Component& new_e, const SourceFile& file);

std::string apply_insertion(std::string_view text, const InsertionPlan& plan,
                            std::string_view new_text);

struct ReorderResult {
  std::string text;
  std::vector<std::string> warnings;  // containers whose ordering verdicts were cyclic
};

ReorderResult reorder_file(const OrderModel& m, const SourceFile& file, bool keep_comments = false);

struct Violation {
  enum class Type { RegionOrder, Reversed };
  Type type = Type::RegionOrder;
  std::string container;  // qualified name
  std::string first;      // the component that should come later
  std::string second;     // the component that should come earlier
  std::size_t offset = 0;

  bool operator==(const Violation&) const = default;
};

std::vector<Violation> check_file(const OrderModel& m, const SourceFile& file);

/// Name of `c` relative to the outermost type: nested names joined with '.',
/// constructors as <init>, initializers as <clinit> (static) or <instinit>.
std::string qualified_name(const SourceFile& file, const Component& c);

}  // namespace ordo
