#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "srm/logic/boxes.hpp"
#include "srm/logic/formula.hpp"
#include "srm/logic/parse.hpp"

using namespace srm;
using namespace srm::logic;

namespace {

Formula box2d(const std::string &x, double xlo, double xhi, const std::string &y,
              double ylo, double yhi) {
  return conj({var_cmp(x, CmpOp::Ge, xlo), var_cmp(x, CmpOp::Lt, xhi),
               var_cmp(y, CmpOp::Ge, ylo), var_cmp(y, CmpOp::Lt, yhi)});
}

}  // namespace

TEST_CASE("evaluate: interval membership") {
  Formula f = conj({var_cmp("x", CmpOp::Ge, 2.0), var_cmp("x", CmpOp::Lt, 3.0)});
  CHECK(evaluate(f, {{"x", 2.5}}));
  CHECK(evaluate(f, {{"x", 2.0}}));
  CHECK_FALSE(evaluate(f, {{"x", 3.0}}));
  CHECK_FALSE(evaluate(f, {{"x", 1.9}}));
}

TEST_CASE("evaluate: true literal") {
  CHECK(evaluate(lit(true), std::map<std::string, double>{}));
  CHECK(evaluate(lit(true), {{"x", 42.0}}));
}

TEST_CASE("evaluate: negated box, boundary excluded") {
  Formula box = box2d("x", 0, 1, "y", 0, 1);
  Formula f = negate(box);
  // y = 1.0 falls outside [0,1), so the negation holds.
  CHECK(evaluate(f, {{"x", 0.5}, {"y", 1.0}}));
  CHECK_FALSE(evaluate(f, {{"x", 0.5}, {"y", 0.5}}));
}

TEST_CASE("evaluate: missing variable errors") {
  Formula f = var_cmp("x", CmpOp::Ge, 0.0);
  CHECK_THROWS_AS(evaluate(f, std::map<std::string, double>{{"y", 1.0}}), Error);
}

TEST_CASE("substitute: template slots stay symbolic") {
  // pos <=> (x >= b1 /\ x < b2) with x := 2.5
  Formula tmpl = iff(bool_var("pos"),
                     conj({cmp(LinTerm::from_var("x"), CmpOp::Ge, LinTerm::from_var("b1")),
                           cmp(LinTerm::from_var("x"), CmpOp::Lt, LinTerm::from_var("b2"))}));
  Formula sub = substitute(tmpl, {{"x", 2.5}});
  CHECK(free_real_vars(sub) == std::set<std::string>{"b1", "b2"});
  CHECK(free_bool_vars(sub) == std::set<std::string>{"pos"});
  // Concretizing the slots makes it evaluable.
  Formula done = substitute_bools(substitute(sub, {{"b1", 2.0}, {"b2", 3.0}}), {{"pos", true}});
  CHECK(evaluate(done, std::map<std::string, double>{}));
}

TEST_CASE("substitute: concrete formula evaluates after substitution") {
  Formula f = var_cmp("x", CmpOp::Lt, 5.0);
  Formula sub = substitute(f, {{"x", 7.0}});
  CHECK(free_real_vars(sub).empty());
  CHECK_FALSE(evaluate(sub, std::map<std::string, double>{}));
}

TEST_CASE("substitute: two-variable template free variable bookkeeping") {
  StateSignature sig({"x", "y"});
  BoxTemplate t = BoxTemplate::symbolic(sig, "0_0");
  Formula f = t.to_formula();
  double vals[] = {1.0, 2.0};
  Formula sub = substitute(f, sig, vals);
  CHECK(free_real_vars(sub) ==
        std::set<std::string>{"b_0_0_x_ge", "b_0_0_x_lt", "b_0_0_y_ge", "b_0_0_y_lt"});
  CHECK(free_bool_vars(sub) == std::set<std::string>{"pos_0_0"});
}

TEST_CASE("box satisfiability: disjoint, overlapping, complement") {
  Formula a = conj({var_cmp("x", CmpOp::Ge, 0.0), var_cmp("x", CmpOp::Lt, 1.0)});
  Formula b = conj({var_cmp("x", CmpOp::Ge, 2.0), var_cmp("x", CmpOp::Lt, 3.0)});
  Formula c = conj({var_cmp("x", CmpOp::Ge, 0.0), var_cmp("x", CmpOp::Lt, 5.0)});
  std::vector<Formula> disjoint = {a, b};
  std::vector<Formula> overlap = {c, b};
  std::vector<Formula> complement = {a, negate(a)};
  CHECK_FALSE(box_conjunction_satisfiable(disjoint));
  CHECK(box_conjunction_satisfiable(overlap));
  CHECK_FALSE(box_conjunction_satisfiable(complement));
}

TEST_CASE("box satisfiability: witness lies inside") {
  Formula a = box2d("x", 0, 5, "y", 1, 2);
  Formula b = negate(box2d("x", 0, 2, "y", 0, 10));
  std::vector<Formula> fs = {a, b};
  auto w = box_conjunction_witness(fs);
  REQUIRE(w.has_value());
  CHECK(evaluate(a, *w));
  CHECK(evaluate(b, *w));
}

TEST_CASE("box satisfiability: unsupported fragment rejected") {
  // x + y >= 0 involves two variables in one comparison.
  LinTerm sum = LinTerm::from_var("x");
  sum.add(LinTerm::from_var("y"));
  Formula f = cmp(sum, CmpOp::Ge, LinTerm::from_const(0.0));
  std::vector<Formula> fs = {f};
  CHECK_THROWS_AS(box_conjunction_satisfiable(fs), UnsupportedFragment);
}

TEST_CASE("box satisfiability: equality atoms") {
  std::vector<Formula> eq_in = {var_cmp("x", CmpOp::Eq, 2.0),
                                conj({var_cmp("x", CmpOp::Ge, 2.0), var_cmp("x", CmpOp::Lt, 3.0)})};
  CHECK(box_conjunction_satisfiable(eq_in));
  std::vector<Formula> eq_out = {var_cmp("x", CmpOp::Eq, 2.0), negate(var_cmp("x", CmpOp::Eq, 2.0))};
  CHECK_FALSE(box_conjunction_satisfiable(eq_out));
}

TEST_CASE("parse: conjunction of comparisons") {
  Formula f = parse_formula("(and (>= x 2) (< x 3))");
  CHECK(evaluate(f, {{"x", 2.5}}));
  CHECK_FALSE(evaluate(f, {{"x", 3.5}}));
  const auto *a = std::get_if<And>(&f->node);
  REQUIRE(a != nullptr);
  CHECK(a->items.size() == 2);
}

TEST_CASE("parse: arity error with position") {
  CHECK_THROWS_AS(parse_formula("(>= x y z)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(not)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(and (>= x 2)"), ParseError);
}

TEST_CASE("parse: unknown variable rejected under signature") {
  StateSignature sig({"x", "y"});
  CHECK_THROWS_AS(parse_formula("(>= z 0)", sig), ParseError);
  CHECK_NOTHROW(parse_formula("(>= x 0)", sig));
  CHECK_NOTHROW(parse_formula("(>= b1 0)", sig, {"b1"}));
}

TEST_CASE("parse: nonlinear product rejected") {
  CHECK_THROWS_AS(parse_formula("(>= (* x y) 0)"), ParseError);
  Formula f = parse_formula("(>= (* 2 x) 3)");
  CHECK(evaluate(f, {{"x", 1.5}}));
  CHECK_FALSE(evaluate(f, {{"x", 1.4}}));
}

namespace {

// Random formula generator over a fixed variable pool; box fragment only
// (single-variable atoms), since those are the formulas the project builds.
Formula random_formula(std::mt19937_64 &rng, int depth) {
  auto unif = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  static const char *vars[] = {"x", "y", "z"};
  if (depth == 0 || unif(4) == 0) {
    int pick = unif(6);
    if (pick == 0) return lit(unif(2) == 0);
    const char *v = vars[unif(3)];
    CmpOp ops[] = {CmpOp::Ge, CmpOp::Gt, CmpOp::Le, CmpOp::Lt, CmpOp::Eq};
    double bound = (unif(41) - 20) / 4.0;
    return var_cmp(v, ops[unif(5)], bound);
  }
  switch (unif(4)) {
    case 0: return negate(random_formula(rng, depth - 1));
    case 1:
    case 2: {
      std::vector<Formula> items;
      int k = 2 + unif(2);
      for (int i = 0; i < k; ++i) items.push_back(random_formula(rng, depth - 1));
      return unif(2) == 0 ? conj(std::move(items)) : disj(std::move(items));
    }
    default:
      return iff(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
  }
}

std::map<std::string, double> random_state(std::mt19937_64 &rng) {
  auto val = [&] { return (static_cast<int>(rng() % 41) - 20) / 4.0; };
  return {{"x", val()}, {"y", val()}, {"z", val()}};
}

}  // namespace

TEST_CASE("property: substitute-then-evaluate agrees with direct evaluation") {
  std::mt19937_64 rng(20240901);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, 3);
    auto state = random_state(rng);
    bool direct = evaluate(f, state);
    Formula sub = substitute(f, state);
    CHECK(free_real_vars(sub).empty());
    CHECK(evaluate(sub, std::map<std::string, double>{}) == direct);
    // Constant folding must preserve the truth value as well.
    Formula s = simplify(sub);
    CHECK(evaluate(s, std::map<std::string, double>{}) == direct);
  }
}

TEST_CASE("property: parse/print round-trip is the identity") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 3);
    std::string text = print_formula(f);
    Formula back = parse_formula(text);
    CHECK(equals(f, back));
    CHECK(print_formula(back) == text);
  }
}

TEST_CASE("property: box DNF agrees with direct evaluation on sample points") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, 3);
    auto regions = to_box_dnf(f);
    // Every region's pick satisfies f.
    for (const auto &region : regions) {
      std::map<std::string, double> pt = {{"x", 0}, {"y", 0}, {"z", 0}};
      for (const auto &[name, iv] : region) pt[name] = iv.pick();
      CHECK(evaluate(f, pt));
    }
    // Random points satisfying f are covered by some region.
    for (int j = 0; j < 20; ++j) {
      auto state = random_state(rng);
      if (!evaluate(f, state)) continue;
      bool covered = false;
      for (const auto &region : regions) {
        bool inside = true;
        for (const auto &[name, iv] : region) {
          Interval point{state.at(name), state.at(name), false, true};
          point.intersect(iv);
          if (point.empty()) {
            inside = false;
            break;
          }
        }
        if (inside) {
          covered = true;
          break;
        }
      }
      CHECK(covered);
    }
  }
}

TEST_CASE("smt_decimal emits SMT-LIB2 real literals") {
  CHECK(smt_decimal(2.0) == "2.0");
  CHECK(smt_decimal(2.5) == "2.5");
  CHECK(smt_decimal(-0.5) == "(- 0.5)");
  CHECK(smt_decimal(0.0) == "0.0");
  CHECK(smt_decimal(1e-5) == "0.00001");
}
