#include <cctype>

#include "fdplan/error.hpp"
#include "fdplan/pddl.hpp"

namespace fdplan::pddl {

std::string Diagnostic::str() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " +
         (severity == Severity::error ? "error: " : "warning: ") + message;
}

namespace {

bool is_name_char(unsigned char c) { return std::isalnum(c) || c == '-' || c == '_'; }

char lower(unsigned char c) { return static_cast<char>(std::tolower(c)); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  // Returns false at end of input. Illegal characters are reported through
  // `on_error` and skipped.
  template <typename OnError>
  bool next(Token& out, OnError&& on_error) {
    while (pos_ < text_.size()) {
      const unsigned char c = static_cast<unsigned char>(text_[pos_]);
      if (c == '\n') {
        advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        advance();
        continue;
      }
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      out.line = line_;
      out.column = column_;
      out.text.clear();
      if (c == '(' || c == ')') {
        out.kind = c == '(' ? TokenKind::lparen : TokenKind::rparen;
        out.text = static_cast<char>(c);
        advance();
        return true;
      }
      if (c == '?' || c == ':') {
        out.kind = c == '?' ? TokenKind::variable : TokenKind::keyword;
        out.text = static_cast<char>(c);
        advance();
        if (pos_ >= text_.size() || !is_name_char(static_cast<unsigned char>(text_[pos_]))) {
          on_error(std::string("expected a name after '") + static_cast<char>(c) + "'", out.line,
                   out.column);
          continue;
        }
        read_name(out.text);
        return true;
      }
      if (is_name_char(c)) {
        out.kind = TokenKind::symbol;
        read_name(out.text);
        return true;
      }
      const int line = line_;
      const int column = column_;
      // One diagnostic per run of illegal bytes.
      while (pos_ < text_.size()) {
        const unsigned char d = static_cast<unsigned char>(text_[pos_]);
        if (std::isspace(d) || d == ';' || d == '(' || d == ')' || d == '?' || d == ':' ||
            is_name_char(d)) {
          break;
        }
        advance();
      }
      on_error(describe(c), line, column);
    }
    return false;
  }

 private:
  static std::string describe(unsigned char c) {
    if (c >= 0x20 && c < 0x7f) return std::string("illegal character '") + static_cast<char>(c) + "'";
    static const char* hex = "0123456789abcdef";
    return std::string("illegal byte 0x") + hex[c >> 4] + hex[c & 0xf];
  }

  void read_name(std::string& out) {
    while (pos_ < text_.size() && is_name_char(static_cast<unsigned char>(text_[pos_]))) {
      out += lower(static_cast<unsigned char>(text_[pos_]));
      advance();
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  Lexer lexer(text);
  std::vector<Token> tokens;
  Token token;
  while (lexer.next(token, [](const std::string& message, int line, int column) {
    throw LexError(message, line, column);
  })) {
    tokens.push_back(token);
  }
  return tokens;
}

std::vector<Token> tokenize(std::string_view text, std::vector<Diagnostic>& diagnostics) {
  Lexer lexer(text);
  std::vector<Token> tokens;
  Token token;
  while (lexer.next(token, [&](const std::string& message, int line, int column) {
    diagnostics.push_back({Severity::error, message, line, column});
  })) {
    tokens.push_back(token);
  }
  return tokens;
}

}  // namespace fdplan::pddl
