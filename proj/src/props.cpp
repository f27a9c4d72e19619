#include "ordo/props.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ordo {

namespace {

constexpr std::array<std::string_view, 6> kPatternNames = {"ACCESS", "FACTORY", "OUTPUT",
                                                           "MAIN",   "GETTER",  "SETTER"};

constexpr std::array<std::string_view, 6> kDefaultPatterns = {
    "(get|is|set)[A-Z][A-Za-z0-9]*", "(new|create)[A-Z][A-Za-z0-9]*", "toString", "main",
    "(get|is)[A-Z][A-Za-z0-9]*",     "(set)[A-Z][A-Za-z0-9]*"};

constexpr std::array<std::string_view, 6> kCategoryPropNames = {"PROTECT", "STATIC",  "ACCESS",
                                                                "FACTORY", "OUTPUT", "MAIN"};

const std::vector<std::string> kFlag = {"T", "F"};
const std::vector<std::string> kCmp3 = {"LSS", "EQL", "GTR"};
const std::vector<std::string> kCmp4 = {"LSS", "EQL", "GTR", "NA"};
const std::vector<std::string> kCallOrder = {"NONE", "CALLS", "CALLEDBY", "BOTH", "NA"};
const std::vector<std::string> kInterfaceOrder = {"SAME", "PRIOR", "AFTER", "NA"};
const std::vector<std::string> kTri = {"T", "F", "NA"};
const std::vector<std::string> kCallers = {"NA", "NONE", "ONE", "TWO", "MANY"};

template <typename E, std::size_t N>
std::vector<std::string> enum_names(const std::array<E, N>& all) {
  std::vector<std::string> out;
  for (E e : all) out.emplace_back(to_string(e));
  return out;
}

dtree::Value flag(bool b) { return b ? 0 : 1; }

template <typename E>
dtree::Value val(E e) {
  return static_cast<dtree::Value>(e);
}

void add_pair(std::vector<dtree::Attribute>& out, std::string_view base,
              const std::vector<std::string>& domain) {
  out.push_back({"From" + std::string(base), domain});
  out.push_back({"To" + std::string(base), domain});
}

std::regex compile(const std::string& key, const std::string& re, int line) {
  try {
    return std::regex(re, std::regex::ECMAScript);
  } catch (const std::regex_error& e) {
    throw BadPattern(key, line, e.what());
  }
}

Cmp compare(std::string_view a, std::string_view b) {
  const int c = a.compare(b);
  return c < 0 ? Cmp::Lss : (c > 0 ? Cmp::Gtr : Cmp::Eql);
}

std::string fold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) {
    return static_cast<char>(ch >= 'A' && ch <= 'Z' ? ch - 'A' + 'a' : ch);
  });
  return out;
}

std::optional<std::string_view> strip_field_prefix(std::string_view name) {
  for (std::string_view p : {"set", "get", "is", "new"}) {
    if (name.starts_with(p)) return name.substr(p.size());
  }
  return std::nullopt;
}

OrderingSide ordering_side(const ComponentTraits& t, const Component& c, const CallFacts& facts) {
  OrderingSide s;
  s.protect = t.protection;
  s.is_static = t.is_static;
  s.is_final = t.is_final;
  s.is_abstract = t.is_abstract;
  s.callers = c.is_method_like() ? bucket_callers(facts.callers(c.id)) : Callers::Na;
  s.getter = t.getter;
  s.setter = t.setter;
  return s;
}

CategorySide category_side(const ComponentTraits& t) {
  return {t.kind, t.protection, t.is_static, t.access, t.factory, t.output, t.main};
}

}  // namespace

std::string_view to_string(PatternKey k) { return kPatternNames[static_cast<std::size_t>(k)]; }

std::optional<PatternKey> parse_pattern_key(std::string_view s) {
  for (std::size_t i = 0; i < kPatternNames.size(); ++i) {
    if (kPatternNames[i] == s) return static_cast<PatternKey>(i);
  }
  return std::nullopt;
}

BadPattern::BadPattern(std::string key, int line, const std::string& detail)
    : PatternError("bad pattern for " + key + (line > 0 ? " at line " + std::to_string(line) : "") +
                   ": " + detail),
      key_(std::move(key)),
      line_(line) {}

UnknownKey::UnknownKey(std::string key, int line)
    : PatternError("unknown pattern key " + key +
                   (line > 0 ? " at line " + std::to_string(line) : "")),
      key_(std::move(key)) {}

NamePatternConfig::NamePatternConfig() {
  for (PatternKey k : kAllPatternKeys) set(k, std::string(kDefaultPatterns[index(k)]));
}

void NamePatternConfig::set(PatternKey k, std::string regex, int line) {
  compiled_[index(k)] = compile(std::string(to_string(k)), regex, line);
  sources_[index(k)] = std::move(regex);
}

bool NamePatternConfig::matches(PatternKey k, std::string_view name) const {
  return std::regex_match(name.begin(), name.end(), compiled_[index(k)]);
}

NamePatternConfig default_patterns() { return NamePatternConfig(); }

NamePatternConfig parse_patterns(std::string_view text) {
  NamePatternConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw BadPattern(line.substr(first), number, "expected KEY=REGEX");
    std::string key = line.substr(first, eq - first);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    const auto k = parse_pattern_key(key);
    if (!k) throw UnknownKey(key, number);
    cfg.set(*k, line.substr(eq + 1), number);
  }
  return cfg;
}

NamePatternConfig load_patterns(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read pattern file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  NamePatternConfig cfg = parse_patterns(ss.str());
  cfg.set_source(file.string());
  return cfg;
}

Callers bucket_callers(int count) {
  if (count <= 0) return Callers::None;
  if (count == 1) return Callers::One;
  if (count == 2) return Callers::Two;
  return Callers::Many;
}

ComponentTraits traits_of(const NamePatternConfig& cfg, const Component& c) {
  ComponentTraits t;
  t.kind = c.kind;
  t.protection = c.modifiers.protection;
  t.is_static = c.modifiers.is_static;
  t.is_final = c.modifiers.is_final;
  t.is_abstract = c.modifiers.is_abstract;
  if (c.kind == Kind::Method) {
    t.access = cfg.matches(PatternKey::Access, c.name);
    t.factory = cfg.matches(PatternKey::Factory, c.name);
    t.output = cfg.matches(PatternKey::Output, c.name);
    t.main = cfg.matches(PatternKey::Main, c.name);
    t.getter = cfg.matches(PatternKey::Getter, c.name);
    t.setter = cfg.matches(PatternKey::Setter, c.name);
  }
  return t;
}

const std::vector<ComponentTraits>& possible_traits() {
  static const std::vector<ComponentTraits> all = [] {
    std::vector<ComponentTraits> out;
    for (Kind k : kAllKinds) {
      const int flag_combos = k == Kind::Method ? 16 : 1;
      for (Protection p : kAllProtections) {
        for (bool st : {true, false}) {
          for (int f = 0; f < flag_combos; ++f) {
            ComponentTraits t;
            t.kind = k;
            t.protection = p;
            t.is_static = st;
            t.access = f & 1;
            t.factory = f & 2;
            t.output = f & 4;
            t.main = f & 8;
            out.push_back(t);
          }
        }
      }
    }
    return out;
  }();
  return all;
}

const dtree::Schema& category_schema() {
  static const dtree::Schema schema = [] {
    std::vector<dtree::Attribute> a;
    a.push_back({"NESTED", enum_names(kAllContexts)});
    add_pair(a, "TYPE", enum_names(kAllKinds));
    add_pair(a, "PROTECT", enum_names(kAllProtections));
    for (std::string_view p : {"STATIC", "ACCESS", "FACTORY", "OUTPUT", "MAIN"}) add_pair(a, p, kFlag);
    return dtree::Schema{std::move(a)};
  }();
  return schema;
}

dtree::Schema ordering_schema(const std::vector<std::uint32_t>& region_ids) {
  std::vector<dtree::Attribute> a;
  if (!region_ids.empty()) {
    dtree::Attribute index{"INDEX", {}};
    for (auto id : region_ids) index.values.push_back(std::to_string(id));
    a.push_back(std::move(index));
  }
  a.push_back({"ALPHAORDER", kCmp3});
  a.push_back({"CASEORDER", kCmp3});
  a.push_back({"FIELDORDER", kCmp4});
  a.push_back({"CALLORDER", kCallOrder});
  a.push_back({"INTERFACEORDER", kInterfaceOrder});
  a.push_back({"MOREPARAMS", kTri});
  a.push_back({"LENGTHORDER", kFlag});
  add_pair(a, "PROTECT", enum_names(kAllProtections));
  add_pair(a, "STATIC", kFlag);
  add_pair(a, "FINAL", kFlag);
  add_pair(a, "ABSTRACT", kFlag);
  add_pair(a, "CALLERS", kCallers);
  add_pair(a, "GETTER", kFlag);
  add_pair(a, "SETTER", kFlag);
  return dtree::Schema{std::move(a)};
}

dtree::SwapMap swap_map(const dtree::Schema& schema) {
  dtree::SwapMap swap;
  swap.attribute.resize(schema.size());
  swap.values.resize(schema.size());
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const dtree::Attribute& a = schema.attributes[i];
    std::string partner = a.name;
    if (a.name.starts_with("From")) partner = "To" + a.name.substr(4);
    if (a.name.starts_with("To")) partner = "From" + a.name.substr(2);
    swap.attribute[i] = schema.find(partner).value_or(i);

    auto lookup = [&](std::string_view v) { return *a.find(v); };
    auto& map = swap.values[i];
    map.resize(a.values.size());
    for (std::size_t v = 0; v < a.values.size(); ++v) {
      const std::string& name = a.values[v];
      std::vector<std::string_view> to = {name};
      if (a.name == "ALPHAORDER" || a.name == "CASEORDER" || a.name == "FIELDORDER") {
        if (name == "LSS") to = {"GTR"};
        if (name == "GTR") to = {"LSS"};
      } else if (a.name == "CALLORDER") {
        if (name == "CALLS") to = {"CALLEDBY"};
        if (name == "CALLEDBY") to = {"CALLS"};
      } else if (a.name == "INTERFACEORDER") {
        if (name == "PRIOR") to = {"AFTER"};
        if (name == "AFTER") to = {"PRIOR"};
      } else if (a.name == "MOREPARAMS" || a.name == "LENGTHORDER") {
        if (name == "T") to = {"F"};
        if (name == "F") to = {"T", "F"};
      }
      for (auto t : to) map[v].push_back(lookup(t));
    }
  }
  return swap;
}

std::vector<dtree::Value> CategoryAttrs::values() const {
  return {val(nested),       val(from.type),        val(to.type),       val(from.protect),
          val(to.protect),   flag(from.is_static),  flag(to.is_static), flag(from.access),
          flag(to.access),   flag(from.factory),    flag(to.factory),   flag(from.output),
          flag(to.output),   flag(from.main),       flag(to.main)};
}

std::vector<dtree::Value> OrderingAttrs::values(const dtree::Schema& schema) const {
  std::vector<dtree::Value> out;
  out.reserve(schema.size());
  if (!schema.attributes.empty() && schema.attributes[0].name == "INDEX") {
    const auto v = schema.attributes[0].find(std::to_string(index));
    if (!v) throw std::out_of_range("region " + std::to_string(index) + " is not in INDEX");
    out.push_back(*v);
  }
  out.insert(out.end(),
             {val(alpha), val(casefold), val(field), val(call), val(iface), val(more_params),
              flag(longer), val(from.protect), val(to.protect), flag(from.is_static),
              flag(to.is_static), flag(from.is_final), flag(to.is_final), flag(from.is_abstract),
              flag(to.is_abstract), val(from.callers), val(to.callers), flag(from.getter),
              flag(to.getter), flag(from.setter), flag(to.setter)});
  return out;
}

CategoryAttrs category_attrs(Context ctx, const ComponentTraits& t1, const ComponentTraits& t2) {
  return {ctx, category_side(t1), category_side(t2)};
}

CategoryAttrs category_attrs(const NamePatternConfig& cfg, Context ctx, const Component& e1,
                             const Component& e2) {
  return category_attrs(ctx, traits_of(cfg, e1), traits_of(cfg, e2));
}

OrderingAttrs ordering_attrs(std::uint32_t region_id, const CallFacts& facts, const Component& e1,
                             const ComponentTraits& t1, const Component& e2,
                             const ComponentTraits& t2) {
  OrderingAttrs o;
  o.index = region_id;
  o.alpha = compare(e1.name, e2.name);
  o.casefold = compare(fold(e1.name), fold(e2.name));

  const auto r1 = strip_field_prefix(e1.name);
  const auto r2 = strip_field_prefix(e2.name);
  o.field = (r1 && r2) ? compare(fold(*r1), fold(*r2)) : Cmp::Na;

  if (e1.is_method_like() && e2.is_method_like()) {
    const bool calls = facts.has_call(e1.id, e2.id);
    const bool called = facts.has_call(e2.id, e1.id);
    o.call = calls ? (called ? CallOrder::Both : CallOrder::Calls)
                   : (called ? CallOrder::CalledBy : CallOrder::None);
  }

  if (e1.overridden_from && e2.overridden_from) {
    const int p1 = e1.overridden_from->position;
    const int p2 = e2.overridden_from->position;
    o.iface = p1 == p2 ? InterfaceOrder::Same : (p1 < p2 ? InterfaceOrder::Prior : InterfaceOrder::After);
  }

  if (e1.is_method_like() && e2.is_method_like() && e1.name == e2.name) {
    o.more_params = e2.param_count.value_or(0) > e1.param_count.value_or(0) ? Tri::T : Tri::F;
  }

  o.longer = e1.body_line_count >= 2 * std::max(1, e2.body_line_count);
  o.from = ordering_side(t1, e1, facts);
  o.to = ordering_side(t2, e2, facts);
  return o;
}

OrderingAttrs ordering_attrs(const NamePatternConfig& cfg, std::uint32_t region_id,
                             const CallFacts& facts, const Component& e1, const Component& e2) {
  return ordering_attrs(region_id, facts, e1, traits_of(cfg, e1), e2, traits_of(cfg, e2));
}

std::string_view to_string(CategoryProp p) {
  return kCategoryPropNames[static_cast<std::size_t>(p)];
}

std::optional<CategoryProp> parse_category_prop(std::string_view s) {
  for (std::size_t i = 0; i < kCategoryPropNames.size(); ++i) {
    if (kCategoryPropNames[i] == s) return static_cast<CategoryProp>(i);
  }
  return std::nullopt;
}

const std::vector<std::string>& prop_domain(CategoryProp p) {
  static const std::vector<std::string> protections = enum_names(kAllProtections);
  return p == CategoryProp::Protect ? protections : kFlag;
}

std::size_t prop_value(CategoryProp p, const ComponentTraits& t) {
  switch (p) {
    case CategoryProp::Protect:
      return static_cast<std::size_t>(t.protection);
    case CategoryProp::Static:
      return flag(t.is_static);
    case CategoryProp::Access:
      return flag(t.access);
    case CategoryProp::Factory:
      return flag(t.factory);
    case CategoryProp::Output:
      return flag(t.output);
    case CategoryProp::Main:
      return flag(t.main);
  }
  return 0;
}

}  // namespace ordo
