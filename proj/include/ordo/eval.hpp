#pragma once

// Remove-and-reinsert evaluation: delete a component, plan its insertion
// back with the model, and measure how far the plan lands from where it was.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ordo/extract.hpp"
#include "ordo/insert.hpp"
#include "ordo/model.hpp"

namespace ordo {

struct EvalRow {
  std::string file;
  Kind kind = Kind::Field;
  std::string name;
  std::int64_t delta = 0;  // planned minus original offset, after removal
  bool region_end = true;

  bool operator==(const EvalRow&) const = default;
};

struct Removal {
  std::string text;      // file text without the component
  std::size_t location;  // where the component sat in `text`
};

/// Removes `x` together with the scaffolding that belongs to it: the text
/// from a same-region predecessor's end, else up to a same-region
/// successor's start, else its whole leading text.
Removal remove_component(const OrderModel& m, const SourceFile& file, const Component& container,
                         const Component& x);

/// Components eligible for removal, in pre-order: members of types with at
/// least two members.
std::vector<const Component*> removal_candidates(const SourceFile& file);

struct TrialResult {
  EvalRow row;
  Removal removal;
  InsertionPlan plan;
  std::string reinserted;  // removal.text with the plan applied
};

/// One remove-and-reinsert trial for component `x` of `file`.
TrialResult reinsert_trial(const OrderModel& m, const SourceFile& file, const Component& x);

struct EvalConfig {
  std::size_t per_file = 4;
  std::uint64_t seed = 0;
};

struct EvalResult {
  std::vector<EvalRow> rows;
  std::vector<std::string> warnings;
};

/// Picks per_file random candidates from each file (files in path order,
/// one generator for the whole run) and runs a trial for each.
EvalResult run_eval(const OrderModel& m, std::vector<SourceFile> files, const EvalConfig& cfg);

struct EvalSummary {
  std::size_t rows = 0;
  std::size_t exact = 0;
  std::size_t region_end = 0;
  std::int64_t median_abs_delta = 0;  // lower median
};

EvalSummary summarize(const std::vector<EvalRow>& rows);

/// Tab-separated rows under a File/Type/Name/Delta/Region End header,
/// followed by `# name<TAB>value` summary lines.
void write_eval(std::ostream& out, const std::vector<EvalRow>& rows);

}  // namespace ordo
