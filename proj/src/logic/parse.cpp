#include "srm/logic/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace srm::logic {

namespace {

struct Token {
  enum Kind { LParen, RParen, Atom, End } kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
public:
  explicit Lexer(const std::string &text) : text_(text) {}

  Token next() {
    skip_space();
    if (pos_ >= text_.size()) return {Token::End, "", pos_};
    std::size_t start = pos_;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      return {Token::LParen, "(", start};
    }
    if (c == ')') {
      ++pos_;
      return {Token::RParen, ")", start};
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';')
      ++pos_;
    return {Token::Atom, text_.substr(start, pos_ - start), start};
  }

  Token peek() {
    std::size_t saved = pos_;
    Token t = next();
    pos_ = saved;
    return t;
  }

  std::size_t pos() const { return pos_; }

private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string &text_;
  std::size_t pos_ = 0;
};

bool is_number(const std::string &s, double &out) {
  if (s.empty()) return false;
  const char *begin = s.c_str();
  char *end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + s.size();
}

bool valid_identifier(const std::string &s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '-')
      return false;
  return true;
}

class Parser {
public:
  Parser(const std::string &text, const StateSignature *signature,
         const std::set<std::string> *extra_reals)
      : lexer_(text), signature_(signature), extra_reals_(extra_reals) {}

  Formula parse() {
    Formula f = parse_formula_expr();
    Token t = lexer_.next();
    if (t.kind != Token::End) throw ParseError("trailing input after formula", t.pos);
    return f;
  }

private:
  // Either a boolean formula or a linear term, decided by the leading operator.
  struct Expr {
    std::optional<Formula> formula;
    std::optional<LinTerm> term;
    std::size_t pos;
  };

  Formula parse_formula_expr() {
    Expr e = parse_expr();
    return require_formula(e);
  }

  Formula require_formula(Expr &e) {
    if (e.formula) return *e.formula;
    throw ParseError("expected a formula, found an arithmetic term", e.pos);
  }

  LinTerm require_term(Expr &e) {
    if (e.term) return *e.term;
    throw ParseError("expected an arithmetic term, found a formula", e.pos);
  }

  Expr parse_expr() {
    Token t = lexer_.next();
    if (t.kind == Token::End) throw ParseError("unexpected end of input", t.pos);
    if (t.kind == Token::RParen) throw ParseError("unexpected ')'", t.pos);
    if (t.kind == Token::Atom) return atom_expr(t);
    // '(' operator args... ')'
    Token op = lexer_.next();
    if (op.kind != Token::Atom) throw ParseError("expected an operator", op.pos);
    Expr result = apply(op);
    Token close = lexer_.next();
    if (close.kind != Token::RParen) throw ParseError("expected ')'", close.pos);
    return result;
  }

  Expr atom_expr(const Token &t) {
    double num;
    if (is_number(t.text, num)) return {std::nullopt, LinTerm::from_const(num), t.pos};
    if (t.text == "true") return {lit(true), std::nullopt, t.pos};
    if (t.text == "false") return {lit(false), std::nullopt, t.pos};
    if (!valid_identifier(t.text)) throw ParseError("invalid token '" + t.text + "'", t.pos);
    if (signature_ && signature_->contains(t.text))
      return {std::nullopt, LinTerm::from_var(t.text), t.pos};
    if (extra_reals_ && extra_reals_->count(t.text))
      return {std::nullopt, LinTerm::from_var(t.text), t.pos};
    if (signature_) {
      // With a signature in force, a bare unknown identifier is a boolean
      // slot; stray state-variable typos surface as unknown-variable errors
      // when used inside a comparison.
      return {bool_var(t.text), LinTerm::from_var(t.text), t.pos};
    }
    return {bool_var(t.text), LinTerm::from_var(t.text), t.pos};
  }

  std::vector<Expr> parse_args(std::size_t min_arity, std::size_t max_arity, const Token &op) {
    std::vector<Expr> args;
    while (lexer_.peek().kind != Token::RParen) {
      if (lexer_.peek().kind == Token::End)
        throw ParseError("unterminated '(' for operator " + op.text, op.pos);
      args.push_back(parse_expr());
    }
    if (args.size() < min_arity || args.size() > max_arity)
      throw ParseError("operator " + op.text + " applied to " + std::to_string(args.size()) +
                           " arguments",
                       op.pos);
    return args;
  }

  Expr apply(const Token &op) {
    const std::string &s = op.text;
    if (s == "and" || s == "or") {
      auto args = parse_args(1, SIZE_MAX, op);
      std::vector<Formula> items;
      for (auto &a : args) items.push_back(require_formula(a));
      return {s == "and" ? conj(std::move(items)) : disj(std::move(items)), std::nullopt, op.pos};
    }
    if (s == "not") {
      auto args = parse_args(1, 1, op);
      return {negate(require_formula(args[0])), std::nullopt, op.pos};
    }
    if (s == "iff") {
      auto args = parse_args(2, 2, op);
      return {iff(require_formula(args[0]), require_formula(args[1])), std::nullopt, op.pos};
    }
    if (s == ">=" || s == ">" || s == "<=" || s == "<" || s == "=") {
      auto args = parse_args(2, 2, op);
      CmpOp c = s == ">=" ? CmpOp::Ge
                : s == ">" ? CmpOp::Gt
                : s == "<=" ? CmpOp::Le
                : s == "<"  ? CmpOp::Lt
                            : CmpOp::Eq;
      check_vars(args[0]);
      check_vars(args[1]);
      return {cmp(require_term(args[0]), c, require_term(args[1])), std::nullopt, op.pos};
    }
    if (s == "+") {
      auto args = parse_args(1, SIZE_MAX, op);
      LinTerm acc;
      for (auto &a : args) acc.add(require_term(a));
      return {std::nullopt, acc, op.pos};
    }
    if (s == "-") {
      auto args = parse_args(1, SIZE_MAX, op);
      LinTerm acc = require_term(args[0]);
      if (args.size() == 1) {
        LinTerm neg;
        neg.add(acc, -1.0);
        return {std::nullopt, neg, op.pos};
      }
      for (std::size_t i = 1; i < args.size(); ++i) acc.add(require_term(args[i]), -1.0);
      return {std::nullopt, acc, op.pos};
    }
    if (s == "*") {
      auto args = parse_args(2, SIZE_MAX, op);
      // Multiplication is restricted to a single non-constant factor to keep
      // terms linear.
      LinTerm acc = LinTerm::from_const(1.0);
      for (auto &a : args) {
        LinTerm t = require_term(a);
        if (acc.is_constant()) {
          double c = acc.constant;
          acc = t;
          for (auto &[n, v] : acc.coeffs) {
            (void)n;
            v *= c;
          }
          acc.constant *= c;
        } else if (t.is_constant()) {
          for (auto &[n, v] : acc.coeffs) {
            (void)n;
            v *= t.constant;
          }
          acc.constant *= t.constant;
        } else {
          throw ParseError("nonlinear product of variables", op.pos);
        }
      }
      return {std::nullopt, acc, op.pos};
    }
    throw ParseError("unknown operator '" + s + "'", op.pos);
  }

  // Inside comparisons every symbol must be a known real variable.
  void check_vars(Expr &e) {
    if (!signature_ || !e.term) return;
    for (const auto &[name, c] : e.term->coeffs) {
      (void)c;
      if (!signature_->contains(name) && !(extra_reals_ && extra_reals_->count(name)))
        throw ParseError("unknown variable '" + name + "'", e.pos);
    }
  }

  Lexer lexer_;
  const StateSignature *signature_;
  const std::set<std::string> *extra_reals_;
};

void append_term(std::string &out, const LinTerm &t);

void append_decimal(std::string &out, double v) { out += smt_decimal(v); }

void append_product(std::string &out, const std::string &name, double coeff) {
  if (coeff == 1.0) {
    out += name;
  } else {
    out += "(* ";
    append_decimal(out, coeff);
    out += ' ';
    out += name;
    out += ')';
  }
}

void append_term(std::string &out, const LinTerm &t) {
  std::size_t pieces = t.coeffs.size() + (t.constant != 0.0 ? 1 : 0);
  if (pieces == 0) {
    append_decimal(out, 0.0);
    return;
  }
  if (pieces > 1) out += "(+ ";
  bool first = true;
  for (const auto &[name, coeff] : t.coeffs) {
    if (!first) out += ' ';
    append_product(out, name, coeff);
    first = false;
  }
  if (t.constant != 0.0 || t.coeffs.empty()) {
    if (!first) out += ' ';
    append_decimal(out, t.constant);
  }
  if (pieces > 1) out += ')';
}

void append_formula(std::string &out, const Formula &f) {
  std::visit(
      [&](const auto &n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lit>) {
          out += n.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, BoolVar>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Cmp>) {
          out += '(';
          out += cmp_op_symbol(n.op);
          out += ' ';
          append_term(out, n.lhs);
          out += ' ';
          append_term(out, n.rhs);
          out += ')';
        } else if constexpr (std::is_same_v<T, Not>) {
          out += "(not ";
          append_formula(out, n.inner);
          out += ')';
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          out += std::is_same_v<T, And> ? "(and" : "(or";
          for (const auto &item : n.items) {
            out += ' ';
            append_formula(out, item);
          }
          out += ')';
        } else {
          static_assert(std::is_same_v<T, Iff>);
          out += "(iff ";
          append_formula(out, n.lhs);
          out += ' ';
          append_formula(out, n.rhs);
          out += ')';
        }
      },
      f->node);
}

}  // namespace

Formula parse_formula(const std::string &text) {
  Parser p(text, nullptr, nullptr);
  return p.parse();
}

Formula parse_formula(const std::string &text, const StateSignature &signature,
                      const std::set<std::string> &extra_reals) {
  Parser p(text, &signature, &extra_reals);
  return p.parse();
}

std::string print_formula(const Formula &f) {
  if (!f) throw Error("print_formula: null formula");
  std::string out;
  append_formula(out, f);
  return out;
}

std::string smt_decimal(double v) {
  if (!std::isfinite(v)) throw Error("non-finite constant in formula");
  bool neg = std::signbit(v) && v != 0.0;
  double mag = neg ? -v : v;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), mag, std::chars_format::fixed);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos) s += ".0";
  if (neg) return "(- " + s + ")";
  return s;
}

}  // namespace srm::logic
