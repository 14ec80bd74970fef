#include "chen/formdsl.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace chen {
namespace {

constexpr unsigned kMaxExponent = 1000;

enum class Tok { Number, Var, Dx, Plus, Minus, Star, Slash, Caret, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;  // digits for Number/Var/Dx
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start, {}};
    const char c = src_[pos_];
    switch (c) {
      case '+': ++pos_; return {Tok::Plus, start, {}};
      case '-': ++pos_; return {Tok::Minus, start, {}};
      case '*': ++pos_; return {Tok::Star, start, {}};
      case '/': ++pos_; return {Tok::Slash, start, {}};
      case '^': ++pos_; return {Tok::Caret, start, {}};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return {Tok::Number, start, digits()};
    if (c == 'x') {
      ++pos_;
      auto d = digits();
      if (d.empty()) throw ParseError("expected variable index after 'x'", pos_);
      return {Tok::Var, start, d};
    }
    if (c == 'd' && pos_ + 1 < src_.size() && src_[pos_ + 1] == 'x') {
      pos_ += 2;
      auto d = digits();
      if (d.empty()) throw ParseError("expected basis index after 'dx'", pos_);
      return {Tok::Dx, start, d};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

 private:
  std::string_view digits() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return src_.substr(start, pos_ - start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

unsigned small_uint(const Token& t, unsigned limit, const char* what) {
  if (t.text.size() > 9) throw ParseError(std::string(what) + " too large", t.offset);
  unsigned v = 0;
  for (char c : t.text) v = v * 10 + static_cast<unsigned>(c - '0');
  if (v > limit) throw ParseError(std::string(what) + " too large", t.offset);
  return v;
}

struct ParsedTerm {
  std::size_t offset;
  Polynomial coef;
  IndexTuple basis;
};

class Parser {
 public:
  Parser(std::string_view src, int n) : lex_(src), n_(n) { advance(); }

  Form parse() {
    std::vector<ParsedTerm> terms;
    terms.push_back(term());
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const bool negate = cur_.kind == Tok::Minus;
      advance();
      terms.push_back(term());
      if (negate) terms.back().coef = -terms.back().coef;
    }
    if (cur_.kind != Tok::End) throw ParseError("expected '+', '-' or end of input", cur_.offset);

    const int p = static_cast<int>(terms.front().basis.size());
    Form out(n_, p);
    for (auto& t : terms) {
      if (static_cast<int>(t.basis.size()) != p) throw ParseError("mixed degrees in one form", t.offset);
      out.add_term(std::move(t.basis), t.coef);
    }
    return out;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  ParsedTerm term() {
    ParsedTerm t{cur_.offset, Polynomial::constant(n_, 1), {}};
    if (cur_.kind != Tok::Dx) {
      t.coef = coef();
      if (cur_.kind != Tok::Dx) return t;
    }
    t.basis = basis();
    return t;
  }

  Polynomial coef() {
    Polynomial c = factor();
    while (cur_.kind == Tok::Star) {
      advance();
      c = c * factor();
    }
    return c;
  }

  Polynomial factor() {
    if (cur_.kind == Tok::Var) {
      const Token v = cur_;
      const unsigned idx = small_uint(v, 1u << 20, "variable index");
      if (idx == 0 || static_cast<int>(idx) > n_) throw ParseError("variable index out of range", v.offset);
      advance();
      unsigned power = 1;
      if (cur_.kind == Tok::Caret) {
        advance();
        if (cur_.kind != Tok::Number) throw ParseError("expected exponent", cur_.offset);
        power = small_uint(cur_, kMaxExponent, "exponent");
        advance();
      }
      Exponents e(n_, 0);
      e[idx - 1] = power;
      return Polynomial::monomial(n_, e, 1);
    }
    return Polynomial::constant(n_, rational());
  }

  Rational rational() {
    bool negative = false;
    if (cur_.kind == Tok::Minus) {
      negative = true;
      advance();
    }
    if (cur_.kind != Tok::Number) throw ParseError("expected number, variable or basis", cur_.offset);
    std::string text(cur_.text);
    advance();
    if (cur_.kind == Tok::Slash) {
      advance();
      if (cur_.kind != Tok::Number) throw ParseError("expected denominator", cur_.offset);
      const std::size_t at = cur_.offset;
      std::string den(cur_.text);
      advance();
      if (den.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", at);
      text += "/" + den;
    }
    Rational r(text, 10);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  IndexTuple basis() {
    IndexTuple idx;
    const std::size_t start = cur_.offset;
    for (;;) {
      const unsigned i = small_uint(cur_, 1u << 20, "basis index");
      if (i == 0 || static_cast<int>(i) > n_) throw ParseError("basis index out of range", cur_.offset);
      idx.push_back(static_cast<int>(i));
      advance();
      if (cur_.kind != Tok::Caret) break;
      advance();
      if (cur_.kind != Tok::Dx) throw ParseError("expected 'dx' after '^'", cur_.offset);
    }
    if (static_cast<int>(idx.size()) > n_) throw ParseError("form degree exceeds dimension", start);
    return idx;
  }

  Lexer lex_;
  int n_;
  Token cur_{Tok::End, 0, {}};
};

void append_monomial(std::string& out, const Exponents& e, const Rational& c, bool first) {
  Rational mag = c;
  if (!first) {
    out += c < 0 ? " - " : " + ";
    mag = abs(c);
  }
  bool constant = true;
  for (unsigned k : e)
    if (k) constant = false;
  if (constant) {
    out += mag.get_str();
    return;
  }
  if (mag != 1) out += mag.get_str() + "*";
  bool first_var = true;
  for (size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!first_var) out += "*";
    first_var = false;
    out += "x" + std::to_string(i + 1);
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
}

std::string basis_text(const IndexTuple& idx) {
  std::string out;
  for (size_t a = 0; a < idx.size(); ++a) {
    if (a) out += "^";
    out += "dx" + std::to_string(idx[a]);
  }
  return out;
}

}  // namespace

Form parse_form(std::string_view text, int n) {
  if (n < 1) throw std::invalid_argument("form dimension must be positive");
  return Parser(text, n).parse();
}

std::string format_form(const Form& w) {
  if (w.is_zero()) {
    if (w.degree() == 0 || w.degree() > w.dim()) return "0";
    IndexTuple idx(w.degree());
    for (int a = 0; a < w.degree(); ++a) idx[a] = a + 1;
    return "0 " + basis_text(idx);
  }
  std::string out;
  bool first = true;
  for (const auto& [idx, f] : w.terms()) {
    for (const auto& [e, c] : f.terms()) {
      append_monomial(out, e, c, first);
      first = false;
      if (!idx.empty()) out += " " + basis_text(idx);
    }
  }
  return out;
}

}  // namespace chen
