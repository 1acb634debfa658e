#include "srm/logic/formula.hpp"

#include <algorithm>
#include <cmath>

namespace srm {

StateSignature::StateSignature(std::vector<std::string> names)
    : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw Error("state variable name must be non-empty");
    if (!index_.emplace(names_[i], static_cast<int>(i)).second)
      throw Error("duplicate state variable name: " + names_[i]);
  }
}

int StateSignature::index_of(const std::string &name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

namespace logic {

const char *cmp_op_symbol(CmpOp op) {
  switch (op) {
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Eq: return "=";
  }
  return "?";
}

LinTerm LinTerm::from_const(double c) {
  LinTerm t;
  t.constant = c;
  return t;
}

LinTerm LinTerm::from_var(const std::string &name, double coeff) {
  LinTerm t;
  if (coeff != 0.0) t.coeffs.emplace_back(name, coeff);
  return t;
}

double LinTerm::coeff(const std::string &name) const {
  for (const auto &[n, c] : coeffs)
    if (n == name) return c;
  return 0.0;
}

void LinTerm::set_coeff(const std::string &name, double c) {
  auto it = std::lower_bound(coeffs.begin(), coeffs.end(), name,
                             [](const auto &p, const std::string &n) { return p.first < n; });
  if (it != coeffs.end() && it->first == name) {
    if (c == 0.0)
      coeffs.erase(it);
    else
      it->second = c;
  } else if (c != 0.0) {
    coeffs.insert(it, {name, c});
  }
}

LinTerm &LinTerm::add(const LinTerm &other, double scale) {
  constant += scale * other.constant;
  for (const auto &[n, c] : other.coeffs) set_coeff(n, coeff(n) + scale * c);
  return *this;
}

bool LinTerm::operator==(const LinTerm &o) const {
  return constant == o.constant && coeffs == o.coeffs;
}

Formula lit(bool value) { return std::make_shared<FormulaNode>(FormulaNode{Lit{value}}); }

Formula bool_var(std::string name) {
  if (name.empty()) throw Error("boolean variable name must be non-empty");
  return std::make_shared<FormulaNode>(FormulaNode{BoolVar{std::move(name)}});
}

Formula cmp(LinTerm lhs, CmpOp op, LinTerm rhs) {
  return std::make_shared<FormulaNode>(FormulaNode{Cmp{std::move(lhs), op, std::move(rhs)}});
}

Formula var_cmp(const std::string &name, CmpOp op, double bound) {
  return cmp(LinTerm::from_var(name), op, LinTerm::from_const(bound));
}

Formula negate(Formula f) { return std::make_shared<FormulaNode>(FormulaNode{Not{std::move(f)}}); }

Formula conj(std::vector<Formula> items) {
  if (items.empty()) return lit(true);
  if (items.size() == 1) return items.front();
  return std::make_shared<FormulaNode>(FormulaNode{And{std::move(items)}});
}

Formula disj(std::vector<Formula> items) {
  if (items.empty()) return lit(false);
  if (items.size() == 1) return items.front();
  return std::make_shared<FormulaNode>(FormulaNode{Or{std::move(items)}});
}

Formula iff(Formula a, Formula b) {
  return std::make_shared<FormulaNode>(FormulaNode{Iff{std::move(a), std::move(b)}});
}

Formula implies(Formula a, Formula b) { return disj({negate(std::move(a)), std::move(b)}); }

bool equals(const Formula &a, const Formula &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto &na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const T &nb = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, Lit>) {
          return na.value == nb.value;
        } else if constexpr (std::is_same_v<T, BoolVar>) {
          return na.name == nb.name;
        } else if constexpr (std::is_same_v<T, Cmp>) {
          return na.op == nb.op && na.lhs == nb.lhs && na.rhs == nb.rhs;
        } else if constexpr (std::is_same_v<T, Not>) {
          return equals(na.inner, nb.inner);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          if (na.items.size() != nb.items.size()) return false;
          for (std::size_t i = 0; i < na.items.size(); ++i)
            if (!equals(na.items[i], nb.items[i])) return false;
          return true;
        } else {
          static_assert(std::is_same_v<T, Iff>);
          return equals(na.lhs, nb.lhs) && equals(na.rhs, nb.rhs);
        }
      },
      a->node);
}

std::optional<double> MapLookup::value(const std::string &name) const {
  auto it = values.find(name);
  if (it == values.end()) return std::nullopt;
  return it->second;
}

std::optional<double> SignatureLookup::value(const std::string &name) const {
  int i = signature.index_of(name);
  if (i < 0 || static_cast<std::size_t>(i) >= values.size()) return std::nullopt;
  return values[static_cast<std::size_t>(i)];
}

namespace {

double eval_term(const LinTerm &t, const VarLookup &state) {
  double acc = t.constant;
  for (const auto &[name, coeff] : t.coeffs) {
    auto v = state.value(name);
    if (!v) throw Error("unassigned variable in formula: " + name);
    acc += coeff * *v;
  }
  return acc;
}

bool eval_cmp(double l, CmpOp op, double r) {
  switch (op) {
    case CmpOp::Ge: return l >= r;
    case CmpOp::Gt: return l > r;
    case CmpOp::Le: return l <= r;
    case CmpOp::Lt: return l < r;
    case CmpOp::Eq: return l == r;
  }
  return false;
}

}  // namespace

bool evaluate(const Formula &f, const VarLookup &state) {
  if (!f) throw Error("evaluate: null formula");
  return std::visit(
      [&](const auto &n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lit>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, BoolVar>) {
          throw Error("unassigned boolean variable in formula: " + n.name);
        } else if constexpr (std::is_same_v<T, Cmp>) {
          return eval_cmp(eval_term(n.lhs, state), n.op, eval_term(n.rhs, state));
        } else if constexpr (std::is_same_v<T, Not>) {
          return !evaluate(n.inner, state);
        } else if constexpr (std::is_same_v<T, And>) {
          for (const auto &item : n.items)
            if (!evaluate(item, state)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Or>) {
          for (const auto &item : n.items)
            if (evaluate(item, state)) return true;
          return false;
        } else {
          static_assert(std::is_same_v<T, Iff>);
          return evaluate(n.lhs, state) == evaluate(n.rhs, state);
        }
      },
      f->node);
}

bool evaluate(const Formula &f, const std::map<std::string, double> &state) {
  return evaluate(f, MapLookup(state));
}

bool evaluate(const Formula &f, const StateSignature &sig, std::span<const double> values) {
  return evaluate(f, SignatureLookup(sig, values));
}

namespace {

LinTerm subst_term(const LinTerm &t, const VarLookup &state) {
  LinTerm out;
  out.constant = t.constant;
  for (const auto &[name, coeff] : t.coeffs) {
    if (auto v = state.value(name))
      out.constant += coeff * *v;
    else
      out.coeffs.emplace_back(name, coeff);
  }
  return out;
}

}  // namespace

Formula substitute(const Formula &f, const VarLookup &state) {
  if (!f) throw Error("substitute: null formula");
  return std::visit(
      [&](const auto &n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lit> || std::is_same_v<T, BoolVar>) {
          return f;
        } else if constexpr (std::is_same_v<T, Cmp>) {
          return cmp(subst_term(n.lhs, state), n.op, subst_term(n.rhs, state));
        } else if constexpr (std::is_same_v<T, Not>) {
          return negate(substitute(n.inner, state));
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          std::vector<Formula> items;
          items.reserve(n.items.size());
          for (const auto &item : n.items) items.push_back(substitute(item, state));
          if constexpr (std::is_same_v<T, And>)
            return std::make_shared<FormulaNode>(FormulaNode{And{std::move(items)}});
          else
            return std::make_shared<FormulaNode>(FormulaNode{Or{std::move(items)}});
        } else {
          static_assert(std::is_same_v<T, Iff>);
          return iff(substitute(n.lhs, state), substitute(n.rhs, state));
        }
      },
      f->node);
}

Formula substitute(const Formula &f, const std::map<std::string, double> &state) {
  return substitute(f, MapLookup(state));
}

Formula substitute(const Formula &f, const StateSignature &sig, std::span<const double> values) {
  return substitute(f, SignatureLookup(sig, values));
}

Formula substitute_bools(const Formula &f, const std::map<std::string, bool> &values) {
  if (!f) throw Error("substitute_bools: null formula");
  return std::visit(
      [&](const auto &n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lit> || std::is_same_v<T, Cmp>) {
          return f;
        } else if constexpr (std::is_same_v<T, BoolVar>) {
          auto it = values.find(n.name);
          return it == values.end() ? f : lit(it->second);
        } else if constexpr (std::is_same_v<T, Not>) {
          return negate(substitute_bools(n.inner, values));
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          std::vector<Formula> items;
          items.reserve(n.items.size());
          for (const auto &item : n.items) items.push_back(substitute_bools(item, values));
          if constexpr (std::is_same_v<T, And>)
            return std::make_shared<FormulaNode>(FormulaNode{And{std::move(items)}});
          else
            return std::make_shared<FormulaNode>(FormulaNode{Or{std::move(items)}});
        } else {
          static_assert(std::is_same_v<T, Iff>);
          return iff(substitute_bools(n.lhs, values), substitute_bools(n.rhs, values));
        }
      },
      f->node);
}

namespace {

std::optional<bool> as_lit(const Formula &f) {
  if (const auto *l = std::get_if<Lit>(&f->node)) return l->value;
  return std::nullopt;
}

}  // namespace

Formula simplify(const Formula &f) {
  if (!f) throw Error("simplify: null formula");
  return std::visit(
      [&](const auto &n) -> Formula {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lit> || std::is_same_v<T, BoolVar>) {
          return f;
        } else if constexpr (std::is_same_v<T, Cmp>) {
          if (n.lhs.is_constant() && n.rhs.is_constant())
            return lit(eval_cmp(n.lhs.constant, n.op, n.rhs.constant));
          return f;
        } else if constexpr (std::is_same_v<T, Not>) {
          Formula inner = simplify(n.inner);
          if (auto v = as_lit(inner)) return lit(!*v);
          return negate(inner);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          constexpr bool is_and = std::is_same_v<T, And>;
          std::vector<Formula> items;
          for (const auto &item : n.items) {
            Formula s = simplify(item);
            if (auto v = as_lit(s)) {
              if (*v != is_and) return lit(!is_and);  // absorbing literal
              continue;                               // neutral literal
            }
            items.push_back(s);
          }
          return is_and ? conj(std::move(items)) : disj(std::move(items));
        } else {
          static_assert(std::is_same_v<T, Iff>);
          Formula a = simplify(n.lhs), b = simplify(n.rhs);
          auto va = as_lit(a), vb = as_lit(b);
          if (va && vb) return lit(*va == *vb);
          if (va) return *va ? b : simplify(negate(b));
          if (vb) return *vb ? a : simplify(negate(a));
          return iff(a, b);
        }
      },
      f->node);
}

void collect_real_vars(const Formula &f, std::set<std::string> &out) {
  std::visit(
      [&](const auto &n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Cmp>) {
          for (const auto &[name, c] : n.lhs.coeffs) {
            (void)c;
            out.insert(name);
          }
          for (const auto &[name, c] : n.rhs.coeffs) {
            (void)c;
            out.insert(name);
          }
        } else if constexpr (std::is_same_v<T, Not>) {
          collect_real_vars(n.inner, out);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          for (const auto &item : n.items) collect_real_vars(item, out);
        } else if constexpr (std::is_same_v<T, Iff>) {
          collect_real_vars(n.lhs, out);
          collect_real_vars(n.rhs, out);
        }
      },
      f->node);
}

void collect_bool_vars(const Formula &f, std::set<std::string> &out) {
  std::visit(
      [&](const auto &n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BoolVar>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Not>) {
          collect_bool_vars(n.inner, out);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          for (const auto &item : n.items) collect_bool_vars(item, out);
        } else if constexpr (std::is_same_v<T, Iff>) {
          collect_bool_vars(n.lhs, out);
          collect_bool_vars(n.rhs, out);
        }
      },
      f->node);
}

std::set<std::string> free_real_vars(const Formula &f) {
  std::set<std::string> out;
  collect_real_vars(f, out);
  return out;
}

std::set<std::string> free_bool_vars(const Formula &f) {
  std::set<std::string> out;
  collect_bool_vars(f, out);
  return out;
}

BoxTemplate BoxTemplate::symbolic(const StateSignature &sig, const std::string &prefix) {
  BoxTemplate t;
  t.pos_symbol = "pos_" + prefix;
  for (const auto &name : sig.names()) {
    VarBounds vb;
    vb.ge.symbol = "b_" + prefix + "_" + name + "_ge";
    vb.lt.symbol = "b_" + prefix + "_" + name + "_lt";
    t.bounds.emplace_back(name, vb);
  }
  return t;
}

bool BoxTemplate::concrete() const {
  if (!pos_value) return false;
  for (const auto &[name, vb] : bounds) {
    (void)name;
    if (!vb.ge.value || !vb.lt.value) return false;
  }
  return true;
}

Formula BoxTemplate::to_formula() const {
  auto slot_term = [](const Slot &s) {
    return s.value ? LinTerm::from_const(*s.value) : LinTerm::from_var(s.symbol);
  };
  std::vector<Formula> parts;
  for (const auto &[name, vb] : bounds) {
    parts.push_back(cmp(LinTerm::from_var(name), CmpOp::Ge, slot_term(vb.ge)));
    parts.push_back(cmp(LinTerm::from_var(name), CmpOp::Lt, slot_term(vb.lt)));
  }
  Formula box = conj(std::move(parts));
  Formula pos = pos_value ? lit(*pos_value) : bool_var(pos_symbol);
  return iff(std::move(pos), std::move(box));
}

}  // namespace logic
}  // namespace srm
