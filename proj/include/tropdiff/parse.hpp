#pragma once

#include "tropdiff/diff_poly.hpp"
#include "tropdiff/errors.hpp"
#include "tropdiff/family.hpp"
#include "tropdiff/rational.hpp"
#include "tropdiff/series.hpp"
#include "tropdiff/support_set.hpp"
#include "tropdiff/trop_poly.hpp"

#include <cctype>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tropdiff {

namespace detail {

enum class Tok {
  number,
  ident,
  plus,
  minus,
  star,
  slash,
  caret,
  lparen,
  rparen,
  comma,
  semicolon,
  prime,
  lbrace,
  rbrace,
  ellipsis,
  trop_plus,  // (+)
  trop_star,  // (*)
  end
};

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::number: return "integer";
    case Tok::ident: return "identifier";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::semicolon: return "';'";
    case Tok::prime: return "'''";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::ellipsis: return "'...'";
    case Tok::trop_plus: return "'(+)'";
    case Tok::trop_star: return "'(*)'";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline std::vector<Token> lex(std::string_view src, bool tropical_ops) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t s = 0; s < k; ++s, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok{Tok::end, "", i, line, col};
    std::size_t len = 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
      tok.kind = Tok::number;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i + len < src.size() && (std::isalnum(static_cast<unsigned char>(src[i + len])) || src[i + len] == '_'))
        ++len;
      tok.kind = Tok::ident;
    } else if (tropical_ops && c == '(' && i + 2 < src.size() && (src[i + 1] == '+' || src[i + 1] == '*') &&
               src[i + 2] == ')') {
      tok.kind = src[i + 1] == '+' ? Tok::trop_plus : Tok::trop_star;
      len = 3;
    } else if (src.substr(i, 3) == "...") {
      tok.kind = Tok::ellipsis;
      len = 3;
    } else {
      switch (c) {
        case '+': tok.kind = Tok::plus; break;
        case '-': tok.kind = Tok::minus; break;
        case '*': tok.kind = Tok::star; break;
        case '/': tok.kind = Tok::slash; break;
        case '^': tok.kind = Tok::caret; break;
        case '(': tok.kind = Tok::lparen; break;
        case ')': tok.kind = Tok::rparen; break;
        case ',': tok.kind = Tok::comma; break;
        case ';': tok.kind = Tok::semicolon; break;
        case '\'': tok.kind = Tok::prime; break;
        case '{': tok.kind = Tok::lbrace; break;
        case '}': tok.kind = Tok::rbrace; break;
        default:
          throw parse_error(std::string("unexpected character '") + c + "'", line, col);
      }
    }
    tok.text = std::string(src.substr(i, len));
    out.push_back(tok);
    advance(len);
  }
  out.push_back(Token{Tok::end, "", src.size(), line, col});
  return out;
}

// Atom of the intermediate polynomial ring Q[t, x_ij, params].
struct Atom {
  enum Kind : std::uint8_t { t, x, param } kind = t;
  std::uint32_t a = 0;  // var (x) or parameter index
  std::uint32_t b = 0;  // derivative order (x)
  auto operator<=>(const Atom&) const = default;
};

using GenericMono = std::map<Atom, std::uint32_t>;
using GenericPoly = std::map<GenericMono, Rational>;

inline void add_into(GenericPoly& p, const GenericMono& m, const Rational& c) {
  auto& slot = p[m];
  slot += c;
  if (slot == 0) p.erase(m);
}

inline GenericPoly gp_add(const GenericPoly& a, const GenericPoly& b, bool negate_b) {
  GenericPoly out = a;
  for (const auto& [m, c] : b) add_into(out, m, negate_b ? Rational(-c) : c);
  return out;
}

inline GenericPoly gp_mul(const GenericPoly& a, const GenericPoly& b) {
  GenericPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      GenericMono m = ma;
      for (const auto& [atom, e] : mb) m[atom] += e;
      add_into(out, m, ca * cb);
    }
  return out;
}

inline GenericPoly gp_const(const Rational& c) {
  GenericPoly p;
  if (c != 0) p[{}] = c;
  return p;
}

inline GenericPoly gp_atom(Atom a) { return GenericPoly{{GenericMono{{a, 1}}, Rational(1)}}; }

class Parser {
 public:
  enum class Mode { series, diff_poly, family };

  Parser(std::string_view src, bool tropical_ops) : toks_(lex(src, tropical_ops)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok t) const { return peek().kind == t; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
    throw parse_error(msg, peek().line, peek().column, std::move(expected));
  }

  Token expect(Tok t) {
    if (!at(t)) fail("unexpected " + describe(peek()), {tok_name(t)});
    return take();
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
  }

  std::uint64_t integer(const Token& t) const {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) throw parse_error("integer out of range: " + t.text, t.line, t.column);
    return v;
  }

  std::uint32_t small_integer(const Token& t) const {
    auto v = integer(t);
    if (v > 100000) throw parse_error("exponent too large: " + t.text, t.line, t.column);
    return static_cast<std::uint32_t>(v);
  }

  // ---- generic expressions ------------------------------------------------

  GenericPoly expr() {
    GenericPoly acc;
    bool neg = false;
    if (at(Tok::plus) || at(Tok::minus)) neg = take().kind == Tok::minus;
    acc = gp_add({}, term(), neg);
    while (at(Tok::plus) || at(Tok::minus)) {
      bool sub = take().kind == Tok::minus;
      acc = gp_add(acc, term(), sub);
    }
    return acc;
  }

  GenericPoly term() {
    GenericPoly acc = factor();
    while (at(Tok::star) || at(Tok::slash)) {
      if (take().kind == Tok::star) {
        acc = gp_mul(acc, factor());
        continue;
      }
      const Token& where = peek();
      auto d = factor();
      if (d.size() != 1 || !d.begin()->first.empty())
        throw parse_error("division is only by nonzero rational constants", where.line, where.column);
      acc = gp_mul(acc, gp_const(1 / d.begin()->second));
    }
    return acc;
  }

  GenericPoly factor() {
    GenericPoly base = primary();
    if (at(Tok::caret)) {
      take();
      auto e = small_integer(expect(Tok::number));
      GenericPoly r = gp_const(1);
      for (std::uint32_t k = 0; k < e; ++k) r = gp_mul(r, base);
      return r;
    }
    return base;
  }

  GenericPoly primary() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::number: {
        take();
        return gp_const(Rational(Integer(tok.text)));
      }
      case Tok::lparen: {
        take();
        auto e = expr();
        expect(Tok::rparen);
        return e;
      }
      case Tok::ident: return identifier();
      default:
        fail("unexpected " + describe(tok), {"integer", "identifier", "'('"});
    }
  }

  // x1, x1'', x1^(3) -> JetVar; call with the identifier not yet consumed.
  std::optional<JetVar> jet_variable() {
    const Token& tok = peek();
    std::uint32_t var = 0;
    if (tok.text == "x") {
      var = 1;
    } else if (tok.text.size() > 1 && tok.text[0] == 'x' &&
               std::all_of(tok.text.begin() + 1, tok.text.end(), [](char ch) { return std::isdigit(ch); })) {
      auto v = integer(Token{Tok::number, tok.text.substr(1), tok.offset, tok.line, tok.column + 1});
      if (v == 0 || v > 1000) throw parse_error("variable index out of range in " + tok.text, tok.line, tok.column);
      var = static_cast<std::uint32_t>(v);
    } else {
      return std::nullopt;
    }
    take();
    std::uint32_t order = 0;
    while (at(Tok::prime)) {
      take();
      ++order;
    }
    if (order == 0 && at(Tok::caret) && peek(1).kind == Tok::lparen) {
      take();
      take();
      order = small_integer(expect(Tok::number));
      expect(Tok::rparen);
    }
    return JetVar{var, order};
  }

  GenericPoly identifier() {
    const Token tok = peek();
    if (tok.text == "t") {
      take();
      return gp_atom({Atom::t, 0, 0});
    }
    if (auto v = jet_variable()) {
      if (mode_ != Mode::diff_poly)
        throw parse_error("differential variable " + tok.text + " not allowed here", tok.line, tok.column);
      return gp_atom({Atom::x, v->var, v->order});
    }
    if (mode_ == Mode::family && tok.text != "O") {
      take();
      auto it = std::find(params_.begin(), params_.end(), tok.text);
      std::uint32_t idx = static_cast<std::uint32_t>(it - params_.begin());
      if (it == params_.end()) params_.push_back(tok.text);
      return gp_atom({Atom::param, idx, 0});
    }
    throw parse_error("unknown identifier '" + tok.text + "'", tok.line, tok.column,
                      mode_ == Mode::series ? std::vector<std::string>{"t"} : std::vector<std::string>{"t", "x<i>"});
  }

  // "; O(t^N)"
  std::optional<std::uint64_t> precision_suffix() {
    if (!at(Tok::semicolon)) return std::nullopt;
    take();
    const Token& o = peek();
    if (o.kind != Tok::ident || o.text != "O") fail("unexpected " + describe(o), {"'O'"});
    take();
    expect(Tok::lparen);
    const Token& t = peek();
    if (t.kind != Tok::ident || t.text != "t") fail("unexpected " + describe(t), {"t"});
    take();
    std::uint64_t n = 1;
    if (at(Tok::caret)) {
      take();
      n = integer(expect(Tok::number));
    }
    expect(Tok::rparen);
    return n;
  }

  void finish() {
    if (!at(Tok::end)) fail("unexpected " + describe(peek()), {"end of input"});
  }

  Mode mode_ = Mode::series;
  std::vector<std::string> params_;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline TruncatedSeries series_from_generic(const GenericPoly& p, std::optional<std::uint64_t> precision) {
  TruncatedSeries::Coefficients coeffs;
  for (const auto& [m, c] : p) {
    std::uint64_t k = 0;
    for (const auto& [atom, e] : m) k += e;  // only t atoms reach here
    if (precision && k >= *precision)
      throw parse_error("term t^" + std::to_string(k) + " lies beyond the precision O(t^" +
                            std::to_string(*precision) + ")",
                        1, 1);
    coeffs[k] += c;
  }
  return precision ? TruncatedSeries::truncated(std::move(coeffs), *precision)
                   : TruncatedSeries::exact(std::move(coeffs));
}

}  // namespace detail

/// Series grammar: `2 + 1/6*t^3 ; O(t^8)`.
inline TruncatedSeries parse_series(std::string_view text) {
  detail::Parser p(text, false);
  p.mode_ = detail::Parser::Mode::series;
  auto g = p.expr();
  auto prec = p.precision_suffix();
  p.finish();
  return detail::series_from_generic(g, prec);
}

/// Differential polynomial grammar: `x1'' - t`, `t*x1*x2' + 1/2`,
/// `x1^(3)`. The arity is the largest variable index, or `min_n` if larger.
inline DiffPolynomial parse_diff_poly(std::string_view text, std::size_t min_n = 1) {
  detail::Parser p(text, false);
  p.mode_ = detail::Parser::Mode::diff_poly;
  auto g = p.expr();
  p.finish();
  std::size_t n = min_n;
  for (const auto& [m, c] : g)
    for (const auto& [atom, e] : m)
      if (atom.kind == detail::Atom::x) n = std::max<std::size_t>(n, atom.a);
  DiffPolynomial out(n);
  for (const auto& [m, c] : g) {
    std::vector<std::vector<std::uint32_t>> rows(n);
    std::uint64_t tdeg = 0;
    for (const auto& [atom, e] : m) {
      if (atom.kind == detail::Atom::t) {
        tdeg += e;
        continue;
      }
      auto& row = rows[atom.a - 1];
      if (row.size() <= atom.b) row.resize(atom.b + 1, 0);
      row[atom.b] += e;
    }
    out.add_term(ExponentMatrix(rows), TruncatedSeries::monomial(c, tdeg));
  }
  return out;
}

/// Tropical grammar: `1 (*) x1' (+) 2 (*) x1^(3) (+) 3`; `x1'^2` is the
/// tropical square. `inf` denotes the empty polynomial.
inline TropDiffPolynomial parse_trop_poly(std::string_view text, std::size_t min_n = 1) {
  detail::Parser p(text, true);
  p.mode_ = detail::Parser::Mode::diff_poly;
  if (p.at(detail::Tok::ident) && p.peek().text == "inf" && p.peek(1).kind == detail::Tok::end)
    return TropDiffPolynomial(min_n);

  std::vector<std::pair<std::uint64_t, std::vector<std::pair<JetVar, std::uint32_t>>>> terms;
  std::size_t n = min_n;
  do {
    std::uint64_t coeff = 0;
    std::vector<std::pair<JetVar, std::uint32_t>> factors;
    do {
      const auto& tok = p.peek();
      if (tok.kind == detail::Tok::number) {
        coeff += p.integer(p.take());
      } else if (tok.kind == detail::Tok::ident) {
        auto v = p.jet_variable();
        if (!v) throw parse_error("unknown identifier '" + tok.text + "'", tok.line, tok.column, {"x<i>"});
        std::uint32_t e = 1;
        if (p.at(detail::Tok::caret)) {
          p.take();
          e = p.small_integer(p.expect(detail::Tok::number));
        }
        factors.push_back({*v, e});
        n = std::max<std::size_t>(n, v->var);
      } else {
        p.fail("unexpected " + detail::Parser::describe(tok), {"integer", "x<i>"});
      }
    } while (p.at(detail::Tok::trop_star) && (p.take(), true));
    terms.push_back({coeff, std::move(factors)});
  } while (p.at(detail::Tok::trop_plus) && (p.take(), true));
  p.finish();

  TropDiffPolynomial out(n);
  for (const auto& [coeff, factors] : terms) {
    ExponentMatrix m(n);
    for (const auto& [v, e] : factors) m = m.with_exponent(v, m.exponent(v) + e);
    out.add_term(m, TropValue(coeff));
  }
  return out;
}

/// `{0,1,3}`, `{2,3,...6}`, `{}`, `{...0}`.
inline SupportSet parse_support_set(std::string_view text) {
  detail::Parser p(text, false);
  p.expect(detail::Tok::lbrace);
  std::vector<std::uint64_t> elems;
  std::optional<std::uint64_t> tail;
  if (!p.at(detail::Tok::rbrace)) {
    do {
      if (p.at(detail::Tok::ellipsis)) {
        p.take();
        tail = p.integer(p.expect(detail::Tok::number));
        break;
      }
      if (!p.at(detail::Tok::number)) p.fail("unexpected " + detail::Parser::describe(p.peek()), {"integer", "'...'"});
      elems.push_back(p.integer(p.take()));
    } while (p.at(detail::Tok::comma) && (p.take(), true));
  }
  p.expect(detail::Tok::rbrace);
  p.finish();
  return SupportSet(std::move(elems), tail);
}

/// `{0,3}` or `({0,3}, {1})`.
inline SupportTuple parse_support_tuple(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos || text[first] != '(') return {parse_support_set(text)};
  auto last = text.find_last_not_of(" \t\r\n");
  if (text[last] != ')') throw parse_error("unterminated support tuple", 1, last + 1, {"')'"});
  SupportTuple out;
  std::size_t start = first + 1;
  for (std::size_t i = start; i <= last; ++i) {
    if (text[i] == ',' || i == last) {
      // a comma inside braces separates elements, not tuple components
      auto piece = text.substr(start, i - start);
      auto open = std::count(piece.begin(), piece.end(), '{');
      auto close = std::count(piece.begin(), piece.end(), '}');
      if (open != close && i != last) continue;
      out.push_back(parse_support_set(piece));
      start = i + 1;
    }
  }
  return out;
}

/// Family grammar: comma-separated series templates whose coefficients may
/// involve named parameters, optionally in parentheses:
/// `c1 + c2*t + 1/6*t^3` or `(a + 5*t + b*t^2, 2 + a*t - 8*t^2 + c*t^3)`.
inline SolutionFamily parse_family(std::string_view text) {
  detail::Parser p(text, false);
  p.mode_ = detail::Parser::Mode::family;

  // Strip one pair of enclosing parentheses if they hold a top-level comma.
  bool wrapped = false;
  if (p.at(detail::Tok::lparen)) {
    int depth = 0;
    bool comma = false;
    std::size_t k = 0;
    for (;; ++k) {
      auto kind = p.peek(k).kind;
      if (kind == detail::Tok::lparen) ++depth;
      if (kind == detail::Tok::rparen && --depth == 0) break;
      if (kind == detail::Tok::comma && depth == 1) comma = true;
      if (kind == detail::Tok::end) break;
    }
    wrapped = comma && p.peek(k).kind == detail::Tok::rparen && p.peek(k + 1).kind == detail::Tok::end;
    if (wrapped) p.take();
  }

  std::vector<detail::GenericPoly> comps;
  do comps.push_back(p.expr());
  while (p.at(detail::Tok::comma) && (p.take(), true));
  if (wrapped) p.expect(detail::Tok::rparen);
  p.finish();

  SolutionFamily fam;
  fam.params = p.params_;
  for (const auto& g : comps) {
    SeriesTemplate tmpl;
    for (const auto& [m, c] : g) {
      std::uint64_t k = 0;
      std::vector<std::uint32_t> exps(fam.params.size(), 0);
      for (const auto& [atom, e] : m) {
        if (atom.kind == detail::Atom::t)
          k += e;
        else
          exps[atom.a] += e;
      }
      auto& slot = tmpl[k][exps];
      slot += c;
      if (slot == 0) {
        tmpl[k].erase(exps);
        if (tmpl[k].empty()) tmpl.erase(k);
      }
    }
    fam.components.push_back(std::move(tmpl));
  }
  return fam;
}

/// A system entry: a tropical polynomial, or `trop(<diff-poly>)`.
inline TropDiffPolynomial parse_system_entry(std::string_view text, std::size_t min_n = 1) {
  auto first = text.find_first_not_of(" \t\r\n");
  auto last = text.find_last_not_of(" \t\r\n");
  if (first != std::string_view::npos && text.substr(first, 5) == "trop(" && text[last] == ')')
    return tropicalize(parse_diff_poly(text.substr(first + 5, last - first - 5), min_n));
  return parse_trop_poly(text, min_n);
}

enum class InputKind { series, diff_poly, trop_poly, support_set, family };

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct ParsedInput {
  InputKind kind;
  std::variant<TruncatedSeries, DiffPolynomial, TropDiffPolynomial, SupportSet, SolutionFamily> payload;
  SourceSpan span;
};

inline ParsedInput parse(std::string_view text, InputKind kind) {
  SourceSpan span{0, text.size()};
  switch (kind) {
    case InputKind::series: return {kind, parse_series(text), span};
    case InputKind::diff_poly: return {kind, parse_diff_poly(text), span};
    case InputKind::trop_poly: return {kind, parse_system_entry(text), span};
    case InputKind::support_set: return {kind, parse_support_set(text), span};
    case InputKind::family: return {kind, parse_family(text), span};
  }
  throw invalid_input_error("unknown input kind");
}

/// Family text form, one template per component.
inline std::string to_string(const SolutionFamily& fam) {
  std::string out;
  for (std::size_t c = 0; c < fam.components.size(); ++c) {
    if (c) out += ", ";
    std::string comp;
    for (const auto& [k, poly] : fam.components[c]) {
      for (const auto& [exps, q] : poly) {
        bool neg = q < 0;
        Rational mag = neg ? Rational(-q) : q;
        std::string body;
        for (std::size_t p = 0; p < exps.size(); ++p) {
          if (!exps[p]) continue;
          if (!body.empty()) body += "*";
          body += fam.params[p];
          if (exps[p] > 1) body += "^" + std::to_string(exps[p]);
        }
        std::string tpart = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
        if (!tpart.empty()) body += (body.empty() ? "" : "*") + tpart;
        if (body.empty())
          body = mag.str();
        else if (mag != 1)
          body = mag.str() + "*" + body;
        detail::append_signed(comp, neg, body);
      }
    }
    out += comp.empty() ? "0" : comp;
  }
  return fam.components.size() > 1 ? "(" + out + ")" : out;
}

}  // namespace tropdiff
