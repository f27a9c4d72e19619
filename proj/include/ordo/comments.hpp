#pragma once

// Comment scaffolding of a region: what precedes its first component, what
// separates its members, and what follows its last one.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordo/extract.hpp"

namespace ordo {

enum class CommentKind : std::uint8_t { Literal, Shape, ShapeDedup, BlankLines };

std::string_view to_string(CommentKind k);  // "literal", "shape", "shape-dedup", "blank"
std::optional<CommentKind> parse_comment_kind(std::string_view s);

struct CommentSpec {
  CommentKind kind = CommentKind::BlankLines;
  std::string text;  // literal and shape kinds
  int lines = 1;     // blank kind

  std::string render() const;
  bool operator==(const CommentSpec&) const = default;
};

enum class Slot : std::uint8_t { Prefix, Between, Suffix };

struct CommentSamples {
  std::map<std::pair<std::uint32_t, Slot>, std::vector<std::string>> blocks;
  std::map<Context, std::vector<int>> gaps;

  void add(std::uint32_t region, Slot slot, std::string text) {
    blocks[{region, slot}].push_back(std::move(text));
  }
  const std::vector<std::string>& get(std::uint32_t region, Slot slot) const;
};

/// Mode acceptance: the most frequent block must occur at least `min_count`
/// times and in at least `num`/`den` of all samples.
struct ModeRule {
  std::uint32_t min_count = 4;
  std::uint32_t num = 1;
  std::uint32_t den = 4;
};

/// Blanks the words inside comments, keeping delimiters, decoration runs
/// (`*`, `-`, `=` and the like) and indentation; trims trailing whitespace.
std::string shape_text(std::string_view block);
/// shape_text followed by dropping repeated adjacent lines.
std::string shape_dedup_text(std::string_view block);

/// The accepted mode of `samples` under `rule`, ties broken by the
/// lexicographically smallest block.
std::optional<std::string> accepted_mode(std::span<const std::string> samples, const ModeRule& rule);

CommentSpec infer_comment(std::span<const std::string> samples, std::span<const int> gaps,
                          const ModeRule& rule = {});

/// Splits the text between components of different regions into the prior
/// region's suffix and the next region's prefix.
std::pair<std::string, std::string> split_boundary_text(std::string_view text);

/// Number of line breaks in a gap.
int gap_size(std::string_view text);

/// Lower median; 1 for an empty set.
int lower_median(std::vector<int> values);

}  // namespace ordo
