#include "tmw/expr.hpp"

#include <cctype>
#include <sstream>

namespace tmw {

MonoidExpr MonoidExpr::generator(Vertex v, int level, Mult mult) {
  MonoidExpr x;
  x.add(v, level, mult);
  return x;
}

void MonoidExpr::add(Vertex v, int level, const Mult& mult) {
  if (mult == 0) {
    return;
  }
  if (mult < 0) {
    throw Error("negative multiplicity");
  }
  terms_[TermKey{v, level}] += mult;
}

MonoidExpr& MonoidExpr::operator+=(const MonoidExpr& rhs) {
  for (const auto& [key, mult] : rhs.terms_) {
    terms_[key] += mult;
  }
  return *this;
}

int MonoidExpr::min_level() const {
  if (is_zero()) {
    throw Error("zero expression has no levels");
  }
  int m = terms_.begin()->first.level;
  for (const auto& [key, mult] : terms_) {
    m = std::min(m, key.level);
  }
  return m;
}

int MonoidExpr::max_level() const {
  if (is_zero()) {
    throw Error("zero expression has no levels");
  }
  int m = terms_.begin()->first.level;
  for (const auto& [key, mult] : terms_) {
    m = std::max(m, key.level);
  }
  return m;
}

Mult MonoidExpr::total_multiplicity() const {
  Mult total = 0;
  for (const auto& [key, mult] : terms_) {
    total += mult;
  }
  return total;
}

MonoidExpr MonoidExpr::shifted(int n) const {
  MonoidExpr out;
  for (const auto& [key, mult] : terms_) {
    out.terms_.emplace(TermKey{key.vertex, key.level + n}, mult);
  }
  return out;
}

std::string MonoidExpr::to_string(const Graph& g) const {
  if (is_zero()) {
    return "0";
  }
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, mult] : terms_) {
    if (!first) {
      out << " + ";
    }
    first = false;
    if (mult != 1) {
      out << mult << "*";
    }
    out << g.vertex_name(key.vertex);
    if (key.level != 0) {
      out << "(" << key.level << ")";
    }
  }
  return out.str();
}

namespace {

struct ExprLexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  static bool name_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '+' && c != '*' &&
           c != '(' && c != ')';
  }
  std::string name() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && name_char(text[pos])) {
      ++pos;
    }
    return std::string(text.substr(start, pos - start));
  }
  std::string digits() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      ++pos;
    }
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    return std::string(text.substr(start, pos - start));
  }
};

bool all_digits(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

}  // namespace

MonoidExpr MonoidExpr::parse(const Graph& g, std::string_view text) {
  ExprLexer lex{text};
  MonoidExpr out;
  if (lex.done()) {
    throw Error("empty expression");
  }
  {
    // A bare 0 denotes the monoid zero.
    ExprLexer probe = lex;
    std::string tok = probe.name();
    if (tok == "0" && probe.done()) {
      return out;
    }
  }
  for (;;) {
    std::string tok = lex.name();
    if (tok.empty()) {
      throw Error("expected a term at position " + std::to_string(lex.pos));
    }
    Mult mult = 1;
    std::string vertex_name;
    if (lex.accept('*')) {
      if (!all_digits(tok)) {
        throw Error("multiplicity '" + tok + "' is not a positive integer");
      }
      mult = Mult(tok);
      if (mult == 0) {
        throw Error("zero multiplicity");
      }
      vertex_name = lex.name();
      if (vertex_name.empty()) {
        throw Error("expected a vertex after '" + tok + "*'");
      }
    } else {
      vertex_name = std::move(tok);
    }
    int level = 0;
    if (lex.accept('(')) {
      std::string lvl = lex.digits();
      if (lvl.empty() || lvl == "-" || lvl == "+") {
        throw Error("expected an integer level");
      }
      level = std::stoi(lvl);
      if (!lex.accept(')')) {
        throw Error("expected ')' after level");
      }
    }
    out.add(g.vertex(vertex_name), level, mult);
    if (lex.done()) {
      break;
    }
    if (!lex.accept('+')) {
      throw Error("expected '+' at position " + std::to_string(lex.pos));
    }
  }
  return out;
}

MonoidExpr order_unit(const Graph& g) {
  MonoidExpr x;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    x.add(v, 0, 1);
  }
  return x;
}

}  // namespace tmw
