#pragma once

// The learned ordering model: per context, the sequence of regions with their
// categories, comment scaffolding and optional within-region ordering tree.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordo/comments.hpp"
#include "ordo/dtree.hpp"
#include "ordo/props.hpp"
#include "ordo/regions.hpp"

namespace ordo {

struct RegionSpec {
  std::vector<std::uint32_t> ids;
  std::vector<Category> categories;  // a component matches if any matches
  CommentSpec prefix;
  CommentSpec between;
  CommentSpec suffix;
  std::optional<dtree::DecisionTree> ordering;  // over ordering_schema({})

  bool matches(Context ctx, const ComponentTraits& t) const;
  bool operator==(const RegionSpec&) const = default;
};

struct ModelMeta {
  std::string corpus;
  std::uint64_t file_count = 0;
  std::string created;

  bool operator==(const ModelMeta&) const = default;
};

struct OrderModel {
  std::map<Context, std::vector<RegionSpec>> contexts;
  NamePatternConfig patterns;
  ModelMeta meta;

  const std::vector<RegionSpec>& regions(Context ctx) const;
  /// Index of the first region of `ctx` matching `t`. Throws NoRegion.
  std::size_t find_region(Context ctx, const ComponentTraits& t) const;

  bool operator==(const OrderModel&) const = default;
};

class NoRegion : public std::runtime_error {
 public:
  NoRegion(Context ctx, Kind kind);
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string element, std::string reason);
  const std::string& element() const { return element_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string element_;
  std::string reason_;
};

class CoverageError : public std::runtime_error {
 public:
  CoverageError(Context ctx, Kind kind);
  Context context() const { return context_; }
  Kind kind() const { return kind_; }

 private:
  Context context_;
  Kind kind_;
};

class InconsistentInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AssembleInput {
  const RegionGroups* groups = nullptr;
  const RegionTable* table = nullptr;
  const CommentSamples* samples = nullptr;
  // Cleaned ordering tree over ordering_schema(ids) and its training rows;
  // both may be absent when there were no ordering samples.
  const dtree::DecisionTree* order_tree = nullptr;
  const dtree::Dataset* order_rows = nullptr;
  const NamePatternConfig* patterns = nullptr;
  ModeRule mode;
};

OrderModel assemble_model(const AssembleInput& in);

/// Ordering tree of one region group: the tree specialized to each member
/// id, with leaves where members disagree on a training row set to EQUAL.
/// Absent when every training row of the group classifies EQUAL.
std::optional<dtree::DecisionTree> group_ordering(const dtree::DecisionTree& order_tree,
                                                  const dtree::Dataset& rows,
                                                  const std::vector<std::uint32_t>& ids);

/// Throws CoverageError naming a (context, kind) without a matching region.
void check_coverage(const OrderModel& m);

void write_model(std::ostream& out, const OrderModel& m);
void write_model(const std::filesystem::path& path, const OrderModel& m);
OrderModel read_model(std::istream& in);
OrderModel read_model(const std::filesystem::path& path);

/// XML escaping used by the writer: & < > " and carriage returns always;
/// newlines and tabs too inside attributes.
std::string xml_escape(std::string_view s, bool attribute);

}  // namespace ordo
