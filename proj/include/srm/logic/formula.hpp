#ifndef SRM_LOGIC_FORMULA_HPP
#define SRM_LOGIC_FORMULA_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace srm {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Ordered variable names of an environment's state vector. The order fixes
// how flat state vectors map onto named variables.
class StateSignature {
public:
  StateSignature() = default;
  explicit StateSignature(std::vector<std::string> names);

  const std::vector<std::string> &names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  // -1 if the name is not part of the signature.
  int index_of(const std::string &name) const;
  bool contains(const std::string &name) const { return index_of(name) >= 0; }

  bool operator==(const StateSignature &o) const { return names_ == o.names_; }

private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

namespace logic {

enum class CmpOp { Ge, Gt, Le, Lt, Eq };

const char *cmp_op_symbol(CmpOp op);

// Linear combination c + sum(coeff_i * var_i), terms sorted by variable name
// and zero coefficients dropped, so equal combinations compare equal.
struct LinTerm {
  double constant = 0.0;
  std::vector<std::pair<std::string, double>> coeffs;

  static LinTerm from_const(double c);
  static LinTerm from_var(const std::string &name, double coeff = 1.0);

  LinTerm &add(const LinTerm &other, double scale = 1.0);
  void set_coeff(const std::string &name, double coeff);
  double coeff(const std::string &name) const;
  bool is_constant() const { return coeffs.empty(); }

  bool operator==(const LinTerm &o) const;
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct Lit {
  bool value;
};
struct BoolVar {
  std::string name;
};
struct Cmp {
  LinTerm lhs;
  CmpOp op;
  LinTerm rhs;
};
struct Not {
  Formula inner;
};
struct And {
  std::vector<Formula> items;
};
struct Or {
  std::vector<Formula> items;
};
struct Iff {
  Formula lhs;
  Formula rhs;
};

struct FormulaNode {
  std::variant<Lit, BoolVar, Cmp, Not, And, Or, Iff> node;
};

Formula lit(bool value);
Formula bool_var(std::string name);
Formula cmp(LinTerm lhs, CmpOp op, LinTerm rhs);
// Convenience for the ubiquitous "x op c" atom.
Formula var_cmp(const std::string &name, CmpOp op, double bound);
Formula negate(Formula f);
Formula conj(std::vector<Formula> items);
Formula disj(std::vector<Formula> items);
Formula iff(Formula a, Formula b);
// (or (not a) b); the guard grammar has no dedicated implication operator.
Formula implies(Formula a, Formula b);

bool equals(const Formula &a, const Formula &b);

// Real-valued variable lookup used by evaluate/substitute. Returns nullopt
// for variables it does not assign.
struct VarLookup {
  virtual ~VarLookup() = default;
  virtual std::optional<double> value(const std::string &name) const = 0;
};

struct MapLookup final : VarLookup {
  const std::map<std::string, double> &values;
  explicit MapLookup(const std::map<std::string, double> &v) : values(v) {}
  std::optional<double> value(const std::string &name) const override;
};

struct SignatureLookup final : VarLookup {
  const StateSignature &signature;
  std::span<const double> values;
  SignatureLookup(const StateSignature &sig, std::span<const double> vals)
      : signature(sig), values(vals) {}
  std::optional<double> value(const std::string &name) const override;
};

// Standard LRA semantics over IEEE doubles. Throws on any unassigned real
// variable or on a boolean variable (template slots are never evaluable).
bool evaluate(const Formula &f, const VarLookup &state);
bool evaluate(const Formula &f, const std::map<std::string, double> &state);
bool evaluate(const Formula &f, const StateSignature &sig,
              std::span<const double> values);

// Replaces assigned real variables by their numeric value (folded into the
// linear terms). Unassigned variables and boolean slots stay symbolic.
Formula substitute(const Formula &f, const VarLookup &state);
Formula substitute(const Formula &f, const std::map<std::string, double> &state);
Formula substitute(const Formula &f, const StateSignature &sig,
                   std::span<const double> values);

// Replaces boolean variables by literals; used when concretizing templates
// from a solver model.
Formula substitute_bools(const Formula &f, const std::map<std::string, bool> &values);

// Constant folding for literals produced by substitution: not(true),
// and/or with literal members, iff with a literal side, constant comparisons.
Formula simplify(const Formula &f);

void collect_real_vars(const Formula &f, std::set<std::string> &out);
void collect_bool_vars(const Formula &f, std::set<std::string> &out);
std::set<std::string> free_real_vars(const Formula &f);
std::set<std::string> free_bool_vars(const Formula &f);

// Box formula template: pos <=> AND_x (x >= b_ge /\ x < b_lt), possibly with
// unfilled slots represented by solver symbol names.
struct BoxTemplate {
  struct Slot {
    std::string symbol;           // solver symbol when value is unset
    std::optional<double> value;  // concrete bound when filled
  };
  struct VarBounds {
    Slot ge;
    Slot lt;
  };

  std::string pos_symbol;
  std::optional<bool> pos_value;
  std::vector<std::pair<std::string, VarBounds>> bounds;  // one entry per state variable

  // Symbolic template over `sig`, slot symbols derived from `prefix`.
  static BoxTemplate symbolic(const StateSignature &sig, const std::string &prefix);

  Formula to_formula() const;
  bool concrete() const;
};

}  // namespace logic
}  // namespace srm

#endif
