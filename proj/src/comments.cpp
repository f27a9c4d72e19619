#include "ordo/comments.hpp"

#include <algorithm>

namespace ordo {

namespace {

constexpr std::array<std::string_view, 4> kKindNames = {"literal", "shape", "shape-dedup",
                                                        "blank"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f'; }

bool is_decoration(std::string_view word) {
  return std::all_of(word.begin(), word.end(), [](char c) {
    return c == '*' || c == '/' || c == '-' || c == '=' || c == '#' || c == '+' || c == '~' ||
           c == '|' || c == '_';
  });
}

std::vector<std::string_view> split_lines(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto nl = s.find('\n', start);
    if (nl == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, nl - start));
    start = nl + 1;
  }
}

// Accumulates the kept pieces of one line; a single space replaces whatever
// separated two kept pieces.
class LineBuilder {
 public:
  explicit LineBuilder(std::string_view indent) : out_(indent) {}

  void keep(std::string_view piece) {
    if (gap_ && has_piece_) out_ += ' ';
    out_ += piece;
    has_piece_ = true;
    gap_ = false;
  }
  void drop() { gap_ = true; }

  std::string finish() {
    if (!has_piece_) return {};
    while (!out_.empty() && is_space(out_.back())) out_.pop_back();
    return out_;
  }

 private:
  std::string out_;
  bool has_piece_ = false;
  bool gap_ = false;
};

// Comment interior: decoration words survive, everything else is dropped.
void interior(LineBuilder& b, std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      b.drop();
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    const auto word = text.substr(i, j - i);
    if (is_decoration(word)) {
      b.keep(word);
    } else {
      b.drop();
    }
    i = j;
  }
}

}  // namespace

std::string_view to_string(CommentKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<CommentKind> parse_comment_kind(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == s) return static_cast<CommentKind>(i);
  }
  return std::nullopt;
}

std::string CommentSpec::render() const {
  if (kind == CommentKind::BlankLines) return std::string(static_cast<std::size_t>(std::max(lines, 0)), '\n');
  return text;
}

const std::vector<std::string>& CommentSamples::get(std::uint32_t region, Slot slot) const {
  static const std::vector<std::string> empty;
  auto it = blocks.find({region, slot});
  return it == blocks.end() ? empty : it->second;
}

std::string shape_text(std::string_view block) {
  std::string out;
  bool in_block = false;
  bool first = true;
  for (std::string_view line : split_lines(block)) {
    if (!first) out += '\n';
    first = false;
    std::size_t i = 0;
    while (i < line.size() && is_space(line[i])) ++i;
    LineBuilder b(line.substr(0, i));
    while (i < line.size()) {
      if (in_block) {
        const auto close = line.find("*/", i);
        if (close == std::string_view::npos) {
          interior(b, line.substr(i));
          i = line.size();
        } else {
          interior(b, line.substr(i, close - i));
          b.keep("*/");
          in_block = false;
          i = close + 2;
        }
      } else if (is_space(line[i])) {
        b.drop();
        ++i;
      } else if (line.substr(i, 2) == "//") {
        b.keep("//");
        interior(b, line.substr(i + 2));
        i = line.size();
      } else if (line.substr(i, 2) == "/*") {
        b.keep("/*");
        in_block = true;
        i += 2;
      } else {
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j]) && line.substr(j, 2) != "//" &&
               line.substr(j, 2) != "/*") {
          ++j;
        }
        b.keep(line.substr(i, j - i));
        i = j;
      }
    }
    out += b.finish();
  }
  return out;
}

std::string shape_dedup_text(std::string_view block) {
  const std::string shaped = shape_text(block);
  std::string out;
  std::optional<std::string_view> previous;
  for (std::string_view line : split_lines(shaped)) {
    if (previous && *previous == line) continue;
    if (previous) out += '\n';
    out += line;
    previous = line;
  }
  return out;
}

std::optional<std::string> accepted_mode(std::span<const std::string> samples,
                                         const ModeRule& rule) {
  if (samples.empty()) return std::nullopt;
  std::map<std::string_view, std::uint32_t> counts;
  for (const auto& s : samples) ++counts[s];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  const std::uint64_t count = best->second;
  if (count < rule.min_count) return std::nullopt;
  if (count * rule.den < static_cast<std::uint64_t>(rule.num) * samples.size()) return std::nullopt;
  return std::string(best->first);
}

CommentSpec infer_comment(std::span<const std::string> samples, std::span<const int> gaps,
                          const ModeRule& rule) {
  if (auto m = accepted_mode(samples, rule)) return {CommentKind::Literal, *m, 0};

  std::vector<std::string> mapped;
  mapped.reserve(samples.size());
  for (const auto& s : samples) mapped.push_back(shape_text(s));
  if (auto m = accepted_mode(mapped, rule)) return {CommentKind::Shape, *m, 0};

  mapped.clear();
  for (const auto& s : samples) mapped.push_back(shape_dedup_text(s));
  if (auto m = accepted_mode(mapped, rule)) return {CommentKind::ShapeDedup, *m, 0};

  return {CommentKind::BlankLines, {}, lower_median({gaps.begin(), gaps.end()})};
}

std::pair<std::string, std::string> split_boundary_text(std::string_view text) {
  std::size_t count = 0;
  std::size_t last = std::string_view::npos;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.substr(i, 2) == "//") {
      const auto nl = text.find('\n', i);
      i = nl == std::string_view::npos ? text.size() : nl + 1;
    } else if (text.substr(i, 2) == "/*") {
      ++count;
      last = i;
      const auto close = text.find("*/", i + 2);
      i = close == std::string_view::npos ? text.size() : close + 2;
    } else {
      ++i;
    }
  }
  if (count < 2) return {std::string(), std::string(text)};
  const auto nl = text.rfind('\n', last);
  const std::size_t cut = nl == std::string_view::npos ? 0 : nl + 1;
  return {std::string(text.substr(0, cut)), std::string(text.substr(cut))};
}

int gap_size(std::string_view text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

int lower_median(std::vector<int> values) {
  if (values.empty()) return 1;
  const std::size_t mid = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  return values[mid];
}

}  // namespace ordo
