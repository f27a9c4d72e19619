#include "java_lexer.hpp"

#include <utility>

#include "ordo/extract.hpp"

namespace ordo::detail {
namespace {

bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

[[noreturn]] void fail(std::string_view text, std::size_t offset, const char* what) {
  auto [line, col] = line_column(text, offset);
  throw ParseError(what, line, col);
}

}  // namespace

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<Token> lex_java(std::string_view text) {
  std::vector<Token> out;
  const std::size_t n = text.size();
  std::size_t i = 0;
  auto push = [&](TokenType t, std::size_t b, std::size_t e) {
    out.push_back(Token{t, b, e, text.substr(b, e - b)});
  };

  while (i < n) {
    const unsigned char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      const auto close = text.find("*/", i + 2);
      if (close == std::string_view::npos) fail(text, i, "unterminated block comment");
      i = close + 2;
      continue;
    }
    if (c == '"') {
      const std::size_t b = i;
      if (text.substr(i, 3) == "\"\"\"") {
        i += 3;
        for (;;) {
          if (i >= n) fail(text, b, "unterminated text block");
          if (text[i] == '\\') {
            i += 2;
          } else if (text.substr(i, 3) == "\"\"\"") {
            i += 3;
            break;
          } else {
            ++i;
          }
        }
      } else {
        ++i;
        for (;;) {
          if (i >= n || text[i] == '\n') fail(text, b, "unterminated string literal");
          if (text[i] == '\\') {
            i += 2;
          } else if (text[i] == '"') {
            ++i;
            break;
          } else {
            ++i;
          }
        }
      }
      push(TokenType::Literal, b, i);
      continue;
    }
    if (c == '\'') {
      const std::size_t b = i++;
      for (;;) {
        if (i >= n || text[i] == '\n') fail(text, b, "unterminated character literal");
        if (text[i] == '\\') {
          i += 2;
        } else if (text[i] == '\'') {
          ++i;
          break;
        } else {
          ++i;
        }
      }
      push(TokenType::Literal, b, i);
      continue;
    }
    if (c >= '0' && c <= '9') {
      const std::size_t b = i;
      while (i < n) {
        const unsigned char d = text[i];
        if (ident_part(d) || d == '.') {
          ++i;
        } else if ((d == '+' || d == '-') && (text[i - 1] == 'e' || text[i - 1] == 'E' ||
                                              text[i - 1] == 'p' || text[i - 1] == 'P')) {
          ++i;
        } else {
          break;
        }
      }
      push(TokenType::Literal, b, i);
      continue;
    }
    if (c == '.' && i + 1 < n && text[i + 1] >= '0' && text[i + 1] <= '9') {
      const std::size_t b = i++;
      while (i < n && (ident_part(text[i]) || text[i] == '.')) ++i;
      push(TokenType::Literal, b, i);
      continue;
    }
    if (ident_start(c)) {
      const std::size_t b = i;
      while (i < n && ident_part(text[i])) ++i;
      push(TokenType::Ident, b, i);
      continue;
    }
    push(TokenType::Punct, i, i + 1);
    ++i;
  }
  out.push_back(Token{TokenType::End, n, n, {}});
  return out;
}

}  // namespace ordo::detail
