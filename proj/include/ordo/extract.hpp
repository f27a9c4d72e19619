#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ordo {

enum class Kind : std::uint8_t {
  Class,
  Interface,
  Enum,
  Field,
  Method,
  Constructor,
  Initializer,
  Annotation,
  AnnotationMember,
};

inline constexpr std::array<Kind, 9> kAllKinds = {
    Kind::Class,       Kind::Interface,   Kind::Enum,
    Kind::Field,       Kind::Method,      Kind::Constructor,
    Kind::Initializer, Kind::Annotation,  Kind::AnnotationMember,
};

/// Nesting context of a component: the kind of type that encloses it.
enum class Context : std::uint8_t { Class, Interface, InnerClass, InnerInterface };

inline constexpr std::array<Context, 4> kAllContexts = {
    Context::Class, Context::Interface, Context::InnerClass, Context::InnerInterface};

enum class Protection : std::uint8_t { Public, Protected, Package, Private };

inline constexpr std::array<Protection, 4> kAllProtections = {
    Protection::Public, Protection::Protected, Protection::Package, Protection::Private};

std::string_view to_string(Kind k);
std::string_view to_string(Context c);
std::string_view to_string(Protection p);
std::optional<Kind> parse_kind(std::string_view s);
std::optional<Context> parse_context(std::string_view s);
std::optional<Protection> parse_protection(std::string_view s);

struct Modifiers {
  Protection protection = Protection::Package;
  bool is_static = false;
  bool is_final = false;
  bool is_abstract = false;

  bool operator==(const Modifiers&) const = default;
};

/// Half-open byte range [begin, end) into the file text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

/// A call site found inside a method or constructor body.
struct Invocation {
  std::string name;
  int arity = 0;
  bool constructor = false;  // `new Name(...)` or `this(...)`

  bool operator==(const Invocation&) const = default;
};

struct InterfaceRef {
  std::string name;
  int position = 0;  // index in the implementing type's interface list

  bool operator==(const InterfaceRef&) const = default;
};

struct Component {
  Kind kind = Kind::Field;
  std::string name;
  Context context = Context::Class;
  Modifiers modifiers;
  std::optional<int> param_count;
  Span span;
  // Text between the previous sibling (or the opening brace) and span.begin.
  std::size_t leading_begin = 0;
  std::string leading_text;
  // Types only: the member area, just after `{` (or after the enum constant
  // list) up to the closing brace.
  Span body;
  Context member_context = Context::Class;
  std::vector<Component> children;
  int body_line_count = 0;
  std::vector<std::string> declared_interfaces;
  std::optional<InterfaceRef> overridden_from;
  std::vector<Invocation> invocations;
  std::uint32_t id = 0;  // pre-order index within the file

  bool is_type() const;
  bool is_method_like() const { return kind == Kind::Method || kind == Kind::Constructor; }
};

struct SourceFile {
  std::filesystem::path path;
  std::string text;
  std::vector<Component> top_level;
  std::vector<std::string> warnings;
  std::uint32_t component_count = 0;

  std::string_view span_text(const Component& c) const {
    return std::string_view(text).substr(c.span.begin, c.span.size());
  }
  // Trailing text after the last top-level component.
  std::string_view trailer() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Segments a Java file into declaration-level components. Throws ParseError
/// when the file cannot be segmented.
SourceFile parse_file(std::filesystem::path path, std::string text);

/// Parses a member declaration as if it appeared inside `container`. The
/// returned component has spans relative to `snippet`. Throws ParseError
/// unless the snippet holds exactly one member.
Component parse_member(std::string_view snippet, const Component& container);

struct Corpus {
  std::vector<SourceFile> files;  // sorted by path
  std::vector<std::string> warnings;
  std::size_t skipped = 0;   // unreadable or unparseable
  std::size_t excluded = 0;  // filtered as test code
};

/// True when the path has a test/tests directory or the text uses JUnit.
bool looks_like_test(const std::filesystem::path& relative, std::string_view text);

Corpus collect_corpus(const std::filesystem::path& root, bool exclude_tests);

/// Resolves `overridden_from` for methods whose declaring type implements an
/// interface declared somewhere in `files`.
void resolve_overrides(std::span<SourceFile> files);

/// Reads a file as bytes; invalid UTF-8 is kept verbatim.
std::string read_source(const std::filesystem::path& path);

struct CallFacts {
  std::set<std::pair<std::uint32_t, std::uint32_t>> calls;  // (caller, callee)
  std::map<std::uint32_t, int> caller_count;

  bool has_call(std::uint32_t caller, std::uint32_t callee) const {
    return calls.contains({caller, callee});
  }
  int callers(std::uint32_t id) const {
    auto it = caller_count.find(id);
    return it == caller_count.end() ? 0 : it->second;
  }
};

/// Name-and-arity matching of invocations to methods and constructors of the
/// top-level type. `extra` components are treated as additional members.
CallFacts compute_call_facts(const Component& top,
                             std::span<const Component* const> extra = {});

/// Visits every component below `c` in pre-order (excluding `c`).
template <typename F>
void for_each_descendant(const Component& c, F&& f) {
  for (const auto& child : c.children) {
    f(child);
    for_each_descendant(child, f);
  }
}

const Component* find_component(const SourceFile& file, std::uint32_t id);

/// Child-index path from the top-level component down to `id`.
std::optional<std::vector<std::size_t>> path_to(const SourceFile& file, std::uint32_t id);
const Component* component_at(const SourceFile& file, std::span<const std::size_t> path);

}  // namespace ordo
