#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace ordo::detail {

enum class TokenType { Ident, Punct, Literal, End };

struct Token {
  TokenType type = TokenType::End;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string_view text;

  bool is(char c) const { return type == TokenType::Punct && text.size() == 1 && text[0] == c; }
  bool is_ident(std::string_view s) const { return type == TokenType::Ident && text == s; }
};

/// Tokenizes Java source, dropping whitespace and comments. Punctuation is
/// emitted one character at a time so `>>` closes two generic brackets.
/// Throws ParseError on unterminated comments or literals.
std::vector<Token> lex_java(std::string_view text);

/// 1-based line and column of a byte offset.
std::pair<int, int> line_column(std::string_view text, std::size_t offset);

}  // namespace ordo::detail
