#pragma once

// Attribute vectors describing a pair of components: the category attributes
// that decide region membership and the ordering attributes that decide the
// order of two components inside a region.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ordo/dtree.hpp"
#include "ordo/extract.hpp"

namespace ordo {

enum class PatternKey : std::uint8_t { Access, Factory, Output, Main, Getter, Setter };

inline constexpr std::array<PatternKey, 6> kAllPatternKeys = {
    PatternKey::Access, PatternKey::Factory, PatternKey::Output,
    PatternKey::Main,   PatternKey::Getter,  PatternKey::Setter};

std::string_view to_string(PatternKey k);
std::optional<PatternKey> parse_pattern_key(std::string_view s);

class PatternError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BadPattern : public PatternError {
 public:
  BadPattern(std::string key, int line, const std::string& detail);
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

class UnknownKey : public PatternError {
 public:
  UnknownKey(std::string key, int line);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class NamePatternConfig {
 public:
  NamePatternConfig();  // the default table

  const std::string& pattern(PatternKey k) const { return sources_[index(k)]; }
  /// Replaces one pattern. Throws BadPattern when it does not compile.
  void set(PatternKey k, std::string regex, int line = 0);
  bool matches(PatternKey k, std::string_view name) const;

  const std::string& source() const { return source_; }
  void set_source(std::string s) { source_ = std::move(s); }

  /// Equality compares the pattern strings only.
  bool operator==(const NamePatternConfig& o) const { return sources_ == o.sources_; }

 private:
  static std::size_t index(PatternKey k) { return static_cast<std::size_t>(k); }

  std::array<std::string, 6> sources_;
  std::array<std::regex, 6> compiled_;
  std::string source_ = "default";
};

NamePatternConfig default_patterns();

/// Applies KEY=REGEX lines on top of the defaults. Blank lines and lines
/// starting with '#' are ignored.
NamePatternConfig parse_patterns(std::string_view text);
NamePatternConfig load_patterns(const std::filesystem::path& file);

enum class Cmp : std::uint8_t { Lss, Eql, Gtr, Na };
enum class CallOrder : std::uint8_t { None, Calls, CalledBy, Both, Na };
enum class InterfaceOrder : std::uint8_t { Same, Prior, After, Na };
enum class Tri : std::uint8_t { T, F, Na };
enum class Callers : std::uint8_t { Na, None, One, Two, Many };

Callers bucket_callers(int count);

/// Per-component facts that do not depend on the other member of a pair.
struct ComponentTraits {
  Kind kind = Kind::Field;
  Protection protection = Protection::Package;
  bool is_static = false;
  bool is_final = false;
  bool is_abstract = false;
  bool access = false;
  bool factory = false;
  bool output = false;
  bool main = false;
  bool getter = false;
  bool setter = false;

  bool operator==(const ComponentTraits&) const = default;
};

ComponentTraits traits_of(const NamePatternConfig& cfg, const Component& c);

/// Every distinct trait combination a component can have: kind, protection
/// and STATIC for all kinds, plus the four category name flags for methods.
const std::vector<ComponentTraits>& possible_traits();

struct CategorySide {
  Kind type = Kind::Field;
  Protection protect = Protection::Package;
  bool is_static = false;
  bool access = false;
  bool factory = false;
  bool output = false;
  bool main = false;

  bool operator==(const CategorySide&) const = default;
};

struct CategoryAttrs {
  Context nested = Context::Class;
  CategorySide from;
  CategorySide to;

  std::vector<dtree::Value> values() const;
  bool operator==(const CategoryAttrs&) const = default;
};

struct OrderingSide {
  Protection protect = Protection::Package;
  bool is_static = false;
  bool is_final = false;
  bool is_abstract = false;
  Callers callers = Callers::Na;
  bool getter = false;
  bool setter = false;

  bool operator==(const OrderingSide&) const = default;
};

struct OrderingAttrs {
  std::uint32_t index = 0;  // region id
  Cmp alpha = Cmp::Eql;
  Cmp casefold = Cmp::Eql;
  Cmp field = Cmp::Na;
  CallOrder call = CallOrder::Na;
  InterfaceOrder iface = InterfaceOrder::Na;
  Tri more_params = Tri::Na;
  bool longer = false;
  OrderingSide from;
  OrderingSide to;

  /// Values over `schema`, which must be an ordering schema; INDEX is
  /// omitted when the schema has no INDEX attribute.
  std::vector<dtree::Value> values(const dtree::Schema& schema) const;
  bool operator==(const OrderingAttrs&) const = default;
};

/// The category schema: NESTED, then From/To pairs of TYPE, PROTECT, STATIC,
/// ACCESS, FACTORY, OUTPUT, MAIN.
const dtree::Schema& category_schema();

/// The ordering schema; INDEX ranges over `region_ids` and is left out when
/// `region_ids` is empty.
dtree::Schema ordering_schema(const std::vector<std::uint32_t>& region_ids);

/// Swap of the two compared components, derived from attribute names.
dtree::SwapMap swap_map(const dtree::Schema& schema);

CategoryAttrs category_attrs(const NamePatternConfig& cfg, Context ctx, const Component& e1,
                             const Component& e2);
CategoryAttrs category_attrs(Context ctx, const ComponentTraits& t1, const ComponentTraits& t2);

OrderingAttrs ordering_attrs(const NamePatternConfig& cfg, std::uint32_t region_id,
                             const CallFacts& facts, const Component& e1, const Component& e2);
OrderingAttrs ordering_attrs(std::uint32_t region_id, const CallFacts& facts, const Component& e1,
                             const ComponentTraits& t1, const Component& e2,
                             const ComponentTraits& t2);

/// Base properties a category can constrain.
enum class CategoryProp : std::uint8_t { Protect, Static, Access, Factory, Output, Main };

inline constexpr std::array<CategoryProp, 6> kAllCategoryProps = {
    CategoryProp::Protect, CategoryProp::Static, CategoryProp::Access,
    CategoryProp::Factory, CategoryProp::Output, CategoryProp::Main};

std::string_view to_string(CategoryProp p);
std::optional<CategoryProp> parse_category_prop(std::string_view s);
/// Domain of a property: protection names or T/F.
const std::vector<std::string>& prop_domain(CategoryProp p);
/// Index of the component's value within prop_domain(p).
std::size_t prop_value(CategoryProp p, const ComponentTraits& t);

}  // namespace ordo
