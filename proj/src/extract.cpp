#include "ordo/extract.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_map>

#include "java_lexer.hpp"

namespace ordo {

namespace {

using detail::Token;
using detail::TokenType;

constexpr std::array<std::string_view, 9> kKindNames = {
    "CLASS",       "INTERFACE",   "ENUM",       "FIELD",            "METHOD",
    "CONSTRUCTOR", "INITIALIZER", "ANNOTATION", "ANNOTATION_MEMBER"};
constexpr std::array<std::string_view, 4> kContextNames = {"CLASS", "INTERFACE", "INNER_CLASS",
                                                           "INNER_INTERFACE"};
constexpr std::array<std::string_view, 4> kProtectionNames = {"PUBLIC", "PROTECTED", "PACKAGE",
                                                              "PRIVATE"};

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

bool is_modifier_word(std::string_view w) {
  static constexpr std::array<std::string_view, 8> kOther = {
      "native", "synchronized", "transient", "volatile", "strictfp", "default", "sealed", "non"};
  return std::find(kOther.begin(), kOther.end(), w) != kOther.end();
}

bool is_call_keyword(std::string_view w) {
  static constexpr std::array<std::string_view, 16> kWords = {
      "if",   "for",   "while", "switch", "catch",  "synchronized", "return", "throw",
      "else", "do",    "try",   "case",   "assert", "super",        "new",    "yield"};
  return std::find(kWords.begin(), kWords.end(), w) != kWords.end();
}

int count_newlines(std::string_view s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), toks_(detail::lex_java(text)) {}

  std::vector<Component> compilation_unit(std::vector<std::string>& warnings) {
    std::vector<Component> tops;
    std::size_t prev_end = 0;
    while (cur().type != TokenType::End) {
      if (cur().is(';')) {
        advance();
        continue;
      }
      if (cur().is_ident("package") || cur().is_ident("import")) {
        while (!cur().is(';')) {
          if (cur().type == TokenType::End) fail("unterminated package or import", cur().begin);
          advance();
        }
        advance();
        continue;
      }
      const std::size_t start = cur().begin;
      const Modifiers mods = parse_modifiers();
      if (!at_type_keyword()) {
        if (cur().is_ident("module") || (cur().is_ident("open") && peek().is_ident("module"))) {
          fail("module declarations are not supported", cur().begin);
        }
        fail("expected a type declaration", cur().begin);
      }
      Component c = parse_type(start, mods, Context::Class, /*top_level=*/true);
      c.leading_begin = prev_end;
      c.leading_text = std::string(text_.substr(prev_end, c.span.begin - prev_end));
      prev_end = c.span.end;
      tops.push_back(std::move(c));
    }
    if (tops.size() > 1) {
      warnings.push_back("multiple top-level types; only '" + tops.front().name + "' is used");
      tops.resize(1);
    }
    return tops;
  }

  Component single_member(const Component& owner) {
    while (cur().is(';')) advance();
    if (cur().type == TokenType::End) fail("snippet holds no declaration", 0);
    Component c = member(owner);
    while (cur().is(';')) advance();
    if (cur().type != TokenType::End) fail("snippet holds more than one declaration", cur().begin);
    c.leading_begin = 0;
    c.leading_text = std::string(text_.substr(0, c.span.begin));
    return c;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t k = 1) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  void advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t offset) const {
    auto [line, col] = detail::line_column(text_, offset);
    throw ParseError(msg, line, col);
  }

  static bool is_open(const Token& t) { return t.is('(') || t.is('[') || t.is('{'); }
  static bool is_close(const Token& t) { return t.is(')') || t.is(']') || t.is('}'); }

  // Index of the bracket closing the opener at `open`.
  std::size_t match_close(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < toks_.size(); ++i) {
      const Token& t = toks_[i];
      if (t.type == TokenType::End) break;
      if (is_open(t)) {
        ++depth;
      } else if (is_close(t)) {
        if (--depth == 0) return i;
      }
    }
    fail("unbalanced brackets", toks_[open].begin);
  }

  std::size_t skip_balanced() {
    const std::size_t close = match_close(pos_);
    pos_ = close;
    advance();
    return close;
  }

  void skip_angle() {
    int depth = 0;
    do {
      if (cur().type == TokenType::End) fail("unterminated type parameters", cur().begin);
      if (cur().is('<')) ++depth;
      if (cur().is('>')) --depth;
      advance();
    } while (depth > 0);
  }

  void skip_annotation() {
    advance();  // '@'
    if (cur().type != TokenType::Ident) fail("expected annotation name", cur().begin);
    advance();
    while (cur().is('.') && peek().type == TokenType::Ident) {
      advance();
      advance();
    }
    if (cur().is('(')) skip_balanced();
  }

  Modifiers parse_modifiers() {
    Modifiers m;
    for (;;) {
      const Token& t = cur();
      if (t.is('@') && !peek().is_ident("interface")) {
        skip_annotation();
        continue;
      }
      if (t.type != TokenType::Ident) break;
      if (t.text == "public") {
        m.protection = Protection::Public;
      } else if (t.text == "protected") {
        m.protection = Protection::Protected;
      } else if (t.text == "private") {
        m.protection = Protection::Private;
      } else if (t.text == "static") {
        m.is_static = true;
      } else if (t.text == "final") {
        m.is_final = true;
      } else if (t.text == "abstract") {
        m.is_abstract = true;
      } else if (t.text == "non") {
        if (!(peek().is('-') && peek(2).is_ident("sealed"))) break;
        advance();
        advance();
      } else if (!is_modifier_word(t.text)) {
        break;
      }
      advance();
    }
    return m;
  }

  bool at_type_keyword() const {
    const Token& t = cur();
    if (t.is('@')) return peek().is_ident("interface");
    if (t.is_ident("class") || t.is_ident("interface") || t.is_ident("enum")) return true;
    return t.is_ident("record") && peek().type == TokenType::Ident &&
           (peek(2).is('(') || peek(2).is('<'));
  }

  Component parse_type(std::size_t start, const Modifiers& mods, Context ctx, bool top_level) {
    Component c;
    c.modifiers = mods;
    c.span.begin = start;
    bool record = false;
    if (cur().is('@')) {
      c.kind = Kind::Annotation;
      advance();
    } else if (cur().is_ident("interface")) {
      c.kind = Kind::Interface;
    } else if (cur().is_ident("enum")) {
      c.kind = Kind::Enum;
    } else {
      c.kind = Kind::Class;
      record = cur().is_ident("record");
    }
    advance();
    if (cur().type != TokenType::Ident) fail("expected type name", cur().begin);
    c.name = std::string(cur().text);
    advance();

    const bool interface_like = c.kind == Kind::Interface || c.kind == Kind::Annotation;
    if (top_level) {
      c.member_context = interface_like ? Context::Interface : Context::Class;
      c.context = c.member_context;
    } else {
      c.member_context = interface_like ? Context::InnerInterface : Context::InnerClass;
      c.context = ctx;
    }

    // Header: collect the implements (or, for interfaces, extends) list.
    const std::string_view list_word = c.kind == Kind::Interface ? "extends" : "implements";
    bool collecting = false;
    std::string current;
    int angle = 0;
    auto flush = [&] {
      if (!current.empty()) c.declared_interfaces.push_back(std::move(current));
      current.clear();
    };
    while (!cur().is('{')) {
      const Token& t = cur();
      if (t.type == TokenType::End || t.is(';')) fail("expected '{' after type header", t.begin);
      if (t.is('(')) {
        skip_balanced();
        continue;
      }
      if (t.is('<')) {
        ++angle;
      } else if (t.is('>')) {
        angle = std::max(0, angle - 1);
      } else if (angle == 0 && t.is_ident(list_word)) {
        collecting = true;
      } else if (angle == 0 && (t.is_ident("permits") || t.is_ident("extends") ||
                                t.is_ident("implements"))) {
        if (collecting) flush();
        collecting = false;
      } else if (collecting && angle == 0) {
        if (t.is(',')) {
          flush();
        } else if (t.type == TokenType::Ident) {
          current = std::string(t.text);
        }
      }
      advance();
    }
    if (collecting) flush();

    c.body.begin = cur().end;
    advance();
    if (c.kind == Kind::Enum) {
      for (;;) {
        const Token& t = cur();
        if (t.type == TokenType::End) fail("unterminated enum body", c.span.begin);
        if (t.is('(') || t.is('{') || t.is('[')) {
          skip_balanced();
          continue;
        }
        if (t.is(';')) {
          c.body.begin = t.end;
          advance();
          break;
        }
        if (t.is('}')) {
          c.body.begin = t.begin;
          break;
        }
        advance();
      }
    }
    body(c, record);
    c.body.end = cur().begin;
    c.span.end = cur().end;
    advance();
    c.body_line_count = count_newlines(text_.substr(c.span.begin, c.span.size()));
    return c;
  }

  void body(Component& owner, bool record) {
    std::size_t prev_end = owner.body.begin;
    for (;;) {
      const Token& t = cur();
      if (t.type == TokenType::End) fail("unterminated body of '" + owner.name + "'", owner.span.begin);
      if (t.is('}')) break;
      if (t.is(';')) {
        advance();
        continue;
      }
      Component m = member(owner, record);
      m.leading_begin = prev_end;
      m.leading_text = std::string(text_.substr(prev_end, m.span.begin - prev_end));
      prev_end = m.span.end;
      owner.children.push_back(std::move(m));
    }
  }

  Component member(const Component& owner, bool record = false) {
    const std::size_t start = cur().begin;
    const Modifiers mods = parse_modifiers();
    const Context ctx = owner.member_context;

    if (cur().is('{')) {
      Component c;
      c.kind = Kind::Initializer;
      c.modifiers = mods;
      c.context = ctx;
      c.span.begin = start;
      c.span.end = toks_[skip_balanced()].end;
      c.body_line_count = count_newlines(text_.substr(c.span.begin, c.span.size()));
      return c;
    }
    if (at_type_keyword()) return parse_type(start, mods, ctx, false);
    if (cur().is('<')) skip_angle();

    if (cur().type == TokenType::Ident && cur().text == owner.name &&
        (peek().is('(') || (record && peek().is('{')))) {
      advance();
      return callable(Kind::Constructor, owner.name, start, mods, owner);
    }

    std::size_t scan = pos_;
    std::size_t last_ident = 0;
    bool have_ident = false;
    int angle = 0;
    for (;; ++scan) {
      const Token& t = toks_[scan];
      if (t.type == TokenType::End) fail("unterminated declaration", toks_[pos_].begin);
      if (t.is('<')) {
        ++angle;
      } else if (t.is('>')) {
        angle = std::max(0, angle - 1);
      } else if (angle == 0 && (t.is('(') || t.is('=') || t.is(';') || t.is(',') || t.is('{'))) {
        break;
      } else if (angle == 0 && t.type == TokenType::Ident) {
        last_ident = scan;
        have_ident = true;
      } else if (t.is(')') || t.is('}')) {
        fail("unexpected '" + std::string(t.text) + "' in declaration", t.begin);
      }
    }
    const Token& stop = toks_[scan];
    if (stop.is('(')) {
      const Token& name_tok = toks_[scan - 1];
      if (scan == pos_ || name_tok.type != TokenType::Ident) fail("expected method name", stop.begin);
      pos_ = scan;
      const Kind kind = owner.kind == Kind::Annotation ? Kind::AnnotationMember : Kind::Method;
      return callable(kind, std::string(name_tok.text), start, mods, owner);
    }
    if (stop.is('{') || !have_ident) fail("malformed member declaration", stop.begin);

    Component c;
    c.kind = Kind::Field;
    c.name = std::string(toks_[last_ident].text);
    c.modifiers = mods;
    c.context = ctx;
    c.span.begin = start;
    pos_ = scan;
    while (!cur().is(';')) {
      if (cur().type == TokenType::End || is_close(cur())) fail("expected ';' after field", cur().begin);
      if (is_open(cur())) {
        skip_balanced();
      } else {
        advance();
      }
    }
    c.span.end = cur().end;
    advance();
    c.body_line_count = count_newlines(text_.substr(c.span.begin, c.span.size()));
    return c;
  }

  // Parses from the parameter list (or, for compact record constructors, the
  // body) onwards.
  Component callable(Kind kind, std::string name, std::size_t start, const Modifiers& mods,
                     const Component& owner) {
    Component c;
    c.kind = kind;
    c.name = std::move(name);
    c.modifiers = mods;
    c.context = owner.member_context;
    c.span.begin = start;
    if (cur().is('(')) {
      const std::size_t open = pos_;
      const std::size_t close = skip_balanced();
      c.param_count = count_args(open, close, /*generics=*/true);
    } else {
      c.param_count = 0;
    }
    if (kind == Kind::AnnotationMember) {
      while (!cur().is(';')) {
        if (cur().type == TokenType::End || is_close(cur())) fail("expected ';'", cur().begin);
        if (is_open(cur())) {
          skip_balanced();
        } else {
          advance();
        }
      }
      c.span.end = cur().end;
      advance();
    } else {
      for (;;) {
        const Token& t = cur();
        if (t.type == TokenType::End || is_close(t)) fail("expected method body or ';'", t.begin);
        if (t.is('{')) {
          const std::size_t open = pos_;
          const std::size_t close = skip_balanced();
          c.span.end = toks_[close].end;
          collect_invocations(open, close, owner.name, c);
          break;
        }
        if (t.is(';')) {
          c.span.end = t.end;
          advance();
          break;
        }
        if (is_open(t)) {
          skip_balanced();
        } else {
          advance();
        }
      }
    }
    c.body_line_count = count_newlines(text_.substr(c.span.begin, c.span.size()));
    return c;
  }

  int count_args(std::size_t open, std::size_t close, bool generics) const {
    if (close == open + 1) return 0;
    int depth = 0;
    int angle = 0;
    int commas = 0;
    for (std::size_t i = open + 1; i < close; ++i) {
      const Token& t = toks_[i];
      if (is_open(t)) {
        ++depth;
      } else if (is_close(t)) {
        --depth;
      } else if (generics && t.is('<')) {
        ++angle;
      } else if (generics && t.is('>')) {
        angle = std::max(0, angle - 1);
      } else if (depth == 0 && angle == 0 && t.is(',')) {
        ++commas;
      }
    }
    return commas + 1;
  }

  void collect_invocations(std::size_t open, std::size_t close, const std::string& owner_name,
                           Component& c) const {
    for (std::size_t i = open + 1; i + 1 < close; ++i) {
      const Token& t = toks_[i];
      if (t.type != TokenType::Ident || !toks_[i + 1].is('(')) continue;
      const Token& prev = toks_[i - 1];
      const std::size_t args_close = match_close(i + 1);
      const int arity = count_args(i + 1, args_close, /*generics=*/false);
      if (t.text == "this") {
        if (!prev.is('.')) c.invocations.push_back({owner_name, arity, true});
        continue;
      }
      if (is_call_keyword(t.text) || prev.is('@')) continue;
      if (prev.is_ident("new")) {
        c.invocations.push_back({std::string(t.text), arity, true});
        continue;
      }
      if (prev.is('.')) {
        if (i >= 2 && toks_[i - 2].is_ident("this") && !(i >= 3 && toks_[i - 3].is('.'))) {
          c.invocations.push_back({std::string(t.text), arity, false});
        }
        continue;
      }
      // `Type name(` inside a body is a local or anonymous-class declaration.
      if (prev.type == TokenType::Ident && !prev.is_ident("return") && !prev.is_ident("throw") &&
          !prev.is_ident("else") && !prev.is_ident("case") && !prev.is_ident("yield")) {
        continue;
      }
      if (prev.is('>') || prev.is(']')) continue;
      c.invocations.push_back({std::string(t.text), arity, false});
    }
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void assign_ids(Component& c, std::uint32_t& next) {
  c.id = next++;
  for (auto& child : c.children) assign_ids(child, next);
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

bool ident_char(char ch) {
  const auto u = static_cast<unsigned char>(ch);
  return std::isalnum(u) || ch == '_' || ch == '$';
}

}  // namespace

std::string_view to_string(Kind k) { return kKindNames[static_cast<std::size_t>(k)]; }
std::string_view to_string(Context c) { return kContextNames[static_cast<std::size_t>(c)]; }
std::string_view to_string(Protection p) { return kProtectionNames[static_cast<std::size_t>(p)]; }
std::optional<Kind> parse_kind(std::string_view s) { return lookup<Kind>(kKindNames, s); }
std::optional<Context> parse_context(std::string_view s) {
  return lookup<Context>(kContextNames, s);
}
std::optional<Protection> parse_protection(std::string_view s) {
  return lookup<Protection>(kProtectionNames, s);
}

bool Component::is_type() const {
  return kind == Kind::Class || kind == Kind::Interface || kind == Kind::Enum ||
         kind == Kind::Annotation;
}

std::string_view SourceFile::trailer() const {
  const std::size_t from = top_level.empty() ? 0 : top_level.back().span.end;
  return std::string_view(text).substr(from);
}

ParseError::ParseError(std::string message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

SourceFile parse_file(std::filesystem::path path, std::string text) {
  SourceFile file;
  file.path = std::move(path);
  file.text = std::move(text);
  Parser parser(file.text);
  file.top_level = parser.compilation_unit(file.warnings);
  std::uint32_t next = 0;
  for (auto& top : file.top_level) assign_ids(top, next);
  file.component_count = next;
  return file;
}

Component parse_member(std::string_view snippet, const Component& container) {
  Parser parser(snippet);
  Component c = parser.single_member(container);
  std::uint32_t next = 0;
  assign_ids(c, next);
  return c;
}

std::string read_source(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_test(const std::filesystem::path& relative, std::string_view text) {
  for (const auto& part : relative.parent_path()) {
    const std::string dir = to_lower(part.string());
    if (dir == "test" || dir == "tests") return true;
  }
  if (text.find("org.junit") != std::string_view::npos) return true;
  static constexpr std::array<std::string_view, 3> kAnnotations = {"@Test", "@Before", "@After"};
  for (const auto ann : kAnnotations) {
    for (auto at = text.find(ann); at != std::string_view::npos; at = text.find(ann, at + 1)) {
      std::string_view rest = text.substr(at + ann.size());
      if (rest.empty() || !ident_char(rest.front())) return true;
      for (const std::string_view suffix : {"Each", "All", "Class"}) {
        if (rest.starts_with(suffix) &&
            (rest.size() == suffix.size() || !ident_char(rest[suffix.size()]))) {
          return true;
        }
      }
    }
  }
  return false;
}

Corpus collect_corpus(const std::filesystem::path& root, bool exclude_tests) {
  namespace fs = std::filesystem;
  Corpus corpus;
  std::vector<fs::path> paths;
  std::error_code ec;
  for (fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec),
       end;
       !ec && it != end; it.increment(ec)) {
    if (it->is_regular_file(ec) && it->path().extension() == ".java") paths.push_back(it->path());
  }
  if (ec) corpus.warnings.push_back("directory walk stopped early: " + ec.message());
  std::sort(paths.begin(), paths.end());

  for (const auto& p : paths) {
    std::string text;
    try {
      text = read_source(p);
    } catch (const std::exception& e) {
      corpus.warnings.push_back(e.what());
      ++corpus.skipped;
      continue;
    }
    if (exclude_tests && looks_like_test(fs::relative(p, root, ec), text)) {
      ++corpus.excluded;
      continue;
    }
    try {
      SourceFile f = parse_file(p, std::move(text));
      for (const auto& w : f.warnings) corpus.warnings.push_back(p.string() + ": " + w);
      corpus.files.push_back(std::move(f));
    } catch (const ParseError& e) {
      corpus.warnings.push_back(p.string() + ":" + e.what());
      ++corpus.skipped;
    }
  }
  resolve_overrides(corpus.files);
  return corpus;
}

void resolve_overrides(std::span<SourceFile> files) {
  std::unordered_map<std::string, std::set<std::pair<std::string, int>>> interfaces;
  auto index = [&](const Component& c) {
    if (c.kind != Kind::Interface) return;
    auto& members = interfaces[c.name];
    for (const auto& m : c.children) {
      if (m.kind == Kind::Method) members.emplace(m.name, m.param_count.value_or(0));
    }
  };
  for (const auto& f : files) {
    for (const auto& top : f.top_level) {
      index(top);
      for_each_descendant(top, index);
    }
  }

  auto resolve = [&](auto&& self, Component& type) -> void {
    for (auto& m : type.children) {
      if (m.is_type()) self(self, m);
      if (m.kind != Kind::Method) continue;
      m.overridden_from.reset();
      for (std::size_t k = 0; k < type.declared_interfaces.size(); ++k) {
        auto it = interfaces.find(type.declared_interfaces[k]);
        if (it != interfaces.end() && it->second.contains({m.name, m.param_count.value_or(0)})) {
          m.overridden_from = InterfaceRef{type.declared_interfaces[k], static_cast<int>(k)};
          break;
        }
      }
    }
  };
  for (auto& f : files) {
    for (auto& top : f.top_level) resolve(resolve, top);
  }
}

CallFacts compute_call_facts(const Component& top, std::span<const Component* const> extra) {
  std::vector<const Component*> members;
  for_each_descendant(top, [&](const Component& c) {
    if (c.is_method_like()) members.push_back(&c);
  });
  for (const Component* c : extra) {
    if (c->is_method_like()) members.push_back(c);
  }

  std::unordered_map<std::string, std::vector<const Component*>> by_name;
  for (const Component* c : members) by_name[c->name].push_back(c);

  CallFacts facts;
  for (const Component* caller : members) {
    for (const auto& inv : caller->invocations) {
      auto it = by_name.find(inv.name);
      if (it == by_name.end()) continue;
      const Kind wanted = inv.constructor ? Kind::Constructor : Kind::Method;
      std::vector<const Component*> same_kind;
      std::vector<const Component*> exact;
      for (const Component* cand : it->second) {
        if (cand->kind != wanted) continue;
        same_kind.push_back(cand);
        if (cand->param_count.value_or(0) == inv.arity) exact.push_back(cand);
      }
      for (const Component* callee : exact.empty() ? same_kind : exact) {
        if (callee->id != caller->id) facts.calls.emplace(caller->id, callee->id);
      }
    }
  }
  for (const auto& [caller, callee] : facts.calls) ++facts.caller_count[callee];
  return facts;
}

const Component* find_component(const SourceFile& file, std::uint32_t id) {
  const Component* found = nullptr;
  for (const auto& top : file.top_level) {
    if (top.id == id) return &top;
    for_each_descendant(top, [&](const Component& c) {
      if (c.id == id) found = &c;
    });
    if (found) return found;
  }
  return nullptr;
}

std::optional<std::vector<std::size_t>> path_to(const SourceFile& file, std::uint32_t id) {
  std::vector<std::size_t> path;
  auto walk = [&](auto&& self, const Component& c) -> bool {
    if (c.id == id) return true;
    for (std::size_t i = 0; i < c.children.size(); ++i) {
      path.push_back(i);
      if (self(self, c.children[i])) return true;
      path.pop_back();
    }
    return false;
  };
  for (std::size_t t = 0; t < file.top_level.size(); ++t) {
    path.assign(1, t);
    if (walk(walk, file.top_level[t])) return path;
  }
  return std::nullopt;
}

const Component* component_at(const SourceFile& file, std::span<const std::size_t> path) {
  if (path.empty() || path[0] >= file.top_level.size()) return nullptr;
  const Component* c = &file.top_level[path[0]];
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (path[i] >= c->children.size()) return nullptr;
    c = &c->children[path[i]];
  }
  return c;
}

}  // namespace ordo
