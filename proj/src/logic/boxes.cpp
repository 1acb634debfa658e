#include "srm/logic/boxes.hpp"

#include <cmath>
#include <limits>

namespace srm::logic {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Interval Interval::all() { return {-kInf, kInf, true, false}; }

bool Interval::empty() const {
  if (lo > hi) return true;
  if (lo == hi) return !(lo_open == false && hi_closed == true);
  return false;
}

void Interval::intersect(const Interval &o) {
  if (o.lo > lo) {
    lo = o.lo;
    lo_open = o.lo_open;
  } else if (o.lo == lo) {
    lo_open = lo_open || o.lo_open;
  }
  if (o.hi < hi) {
    hi = o.hi;
    hi_closed = o.hi_closed;
  } else if (o.hi == hi) {
    hi_closed = hi_closed && o.hi_closed;
  }
}

double Interval::pick() const {
  if (lo == -kInf && hi == kInf) return 0.0;
  if (lo == -kInf) return hi_closed ? hi : hi - 1.0;
  if (hi == kInf) return lo_open ? lo + 1.0 : lo;
  if (!lo_open) return lo;
  double mid = lo + (hi - lo) / 2.0;
  if (mid > lo && (mid < hi || (mid == hi && hi_closed))) return mid;
  return std::nextafter(lo, hi);
}

namespace {

using Dnf = std::vector<BoxRegion>;

void insert_region(Dnf &out, BoxRegion region, std::size_t max_regions) {
  for (const auto &[name, iv] : region) {
    (void)name;
    if (iv.empty()) return;
  }
  out.push_back(std::move(region));
  if (out.size() > max_regions) throw UnsupportedFragment("box DNF too large");
}

Dnf dnf_true() { return {BoxRegion{}}; }
Dnf dnf_false() { return {}; }

Dnf dnf_atom(const std::string &var, Interval iv, std::size_t max_regions) {
  Dnf out;
  BoxRegion r;
  r[var] = iv;
  insert_region(out, std::move(r), max_regions);
  return out;
}

Dnf dnf_product(const Dnf &a, const Dnf &b, std::size_t max_regions) {
  Dnf out;
  for (const auto &ra : a)
    for (const auto &rb : b) {
      BoxRegion merged = ra;
      for (const auto &[name, iv] : rb) {
        auto it = merged.find(name);
        if (it == merged.end())
          merged[name] = iv;
        else
          it->second.intersect(iv);
      }
      insert_region(out, std::move(merged), max_regions);
    }
  return out;
}

Dnf dnf_union(Dnf a, const Dnf &b, std::size_t max_regions) {
  for (const auto &r : b) insert_region(a, r, max_regions);
  return a;
}

// Normalize lhs op rhs into a single-variable interval (or a constant truth
// value when no variable remains).
struct NormalizedCmp {
  bool constant;       // comparison without variables
  bool constant_value;
  std::string var;
  Interval iv;
};

NormalizedCmp normalize_cmp(const Cmp &c, bool positive) {
  LinTerm d = c.lhs;
  d.add(c.rhs, -1.0);  // d op 0
  CmpOp op = c.op;
  if (!positive) {
    switch (op) {
      case CmpOp::Ge: op = CmpOp::Lt; break;
      case CmpOp::Gt: op = CmpOp::Le; break;
      case CmpOp::Le: op = CmpOp::Gt; break;
      case CmpOp::Lt: op = CmpOp::Ge; break;
      case CmpOp::Eq:
        // handled by the caller: splits into two strict regions
        break;
    }
  }
  NormalizedCmp out;
  if (d.coeffs.empty()) {
    out.constant = true;
    double v = d.constant;
    bool truth;
    switch (op) {
      case CmpOp::Ge: truth = v >= 0; break;
      case CmpOp::Gt: truth = v > 0; break;
      case CmpOp::Le: truth = v <= 0; break;
      case CmpOp::Lt: truth = v < 0; break;
      case CmpOp::Eq: truth = v == 0; break;
      default: truth = false;
    }
    out.constant_value = truth;
    return out;
  }
  if (d.coeffs.size() > 1)
    throw UnsupportedFragment("comparison involves more than one variable");
  out.constant = false;
  out.var = d.coeffs[0].first;
  double a = d.coeffs[0].second;
  double bound = -d.constant / a;
  if (a < 0) {
    switch (op) {
      case CmpOp::Ge: op = CmpOp::Le; break;
      case CmpOp::Gt: op = CmpOp::Lt; break;
      case CmpOp::Le: op = CmpOp::Ge; break;
      case CmpOp::Lt: op = CmpOp::Gt; break;
      case CmpOp::Eq: break;
    }
  }
  Interval iv = Interval::all();
  switch (op) {
    case CmpOp::Ge: iv.lo = bound; iv.lo_open = false; break;
    case CmpOp::Gt: iv.lo = bound; iv.lo_open = true; break;
    case CmpOp::Le: iv.hi = bound; iv.hi_closed = true; break;
    case CmpOp::Lt: iv.hi = bound; iv.hi_closed = false; break;
    case CmpOp::Eq:
      iv.lo = bound; iv.lo_open = false;
      iv.hi = bound; iv.hi_closed = true;
      break;
  }
  out.iv = iv;
  return out;
}

Dnf to_dnf(const Formula &f, bool positive, std::size_t max_regions) {
  return std::visit(
      [&](const auto &n) -> Dnf {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lit>) {
          return (n.value == positive) ? dnf_true() : dnf_false();
        } else if constexpr (std::is_same_v<T, BoolVar>) {
          throw UnsupportedFragment("free boolean variable '" + n.name + "' in box check");
        } else if constexpr (std::is_same_v<T, Cmp>) {
          if (!positive && n.op == CmpOp::Eq) {
            // not(x = v)  ->  x < v \/ x > v
            NormalizedCmp eq = normalize_cmp(n, true);
            if (eq.constant) return eq.constant_value ? dnf_false() : dnf_true();
            Interval below = Interval::all(), above = Interval::all();
            below.hi = eq.iv.lo; below.hi_closed = false;
            above.lo = eq.iv.lo; above.lo_open = true;
            return dnf_union(dnf_atom(eq.var, below, max_regions),
                             dnf_atom(eq.var, above, max_regions), max_regions);
          }
          NormalizedCmp norm = normalize_cmp(n, positive);
          if (norm.constant) return norm.constant_value ? dnf_true() : dnf_false();
          return dnf_atom(norm.var, norm.iv, max_regions);
        } else if constexpr (std::is_same_v<T, Not>) {
          return to_dnf(n.inner, !positive, max_regions);
        } else if constexpr (std::is_same_v<T, And> || std::is_same_v<T, Or>) {
          constexpr bool is_and = std::is_same_v<T, And>;
          bool product = (is_and == positive);
          if (product) {
            Dnf acc = dnf_true();
            for (const auto &item : n.items)
              acc = dnf_product(acc, to_dnf(item, positive, max_regions), max_regions);
            return acc;
          }
          Dnf acc = dnf_false();
          for (const auto &item : n.items)
            acc = dnf_union(acc, to_dnf(item, positive, max_regions), max_regions);
          return acc;
        } else {
          static_assert(std::is_same_v<T, Iff>);
          // p:  (a/\b) \/ (~a/\~b);  ~p:  (a/\~b) \/ (~a/\b)
          Dnf both = dnf_product(to_dnf(n.lhs, true, max_regions),
                                 to_dnf(n.rhs, positive, max_regions), max_regions);
          Dnf neither = dnf_product(to_dnf(n.lhs, false, max_regions),
                                    to_dnf(n.rhs, !positive, max_regions), max_regions);
          return dnf_union(std::move(both), neither, max_regions);
        }
      },
      f->node);
}

}  // namespace

std::vector<BoxRegion> to_box_dnf(const Formula &f, std::size_t max_regions) {
  if (!f) throw Error("to_box_dnf: null formula");
  return to_dnf(f, true, max_regions);
}

bool box_conjunction_satisfiable(std::span<const Formula> fs) {
  return box_conjunction_witness(fs).has_value();
}

std::optional<std::map<std::string, double>> box_conjunction_witness(
    std::span<const Formula> fs) {
  Dnf acc = {BoxRegion{}};
  for (const auto &f : fs) {
    if (!f) throw Error("box_conjunction_witness: null formula");
    Dnf d = to_dnf(f, true, 100000);
    std::vector<BoxRegion> next;
    for (const auto &ra : acc)
      for (const auto &rb : d) {
        BoxRegion merged = ra;
        bool ok = true;
        for (const auto &[name, iv] : rb) {
          auto it = merged.find(name);
          if (it == merged.end())
            merged[name] = iv;
          else
            it->second.intersect(iv);
          if (merged[name].empty()) {
            ok = false;
            break;
          }
        }
        if (ok) next.push_back(std::move(merged));
        if (next.size() > 100000) throw UnsupportedFragment("box DNF too large");
      }
    acc = std::move(next);
    if (acc.empty()) return std::nullopt;
  }
  std::map<std::string, double> witness;
  for (const auto &[name, iv] : acc.front()) witness[name] = iv.pick();
  return witness;
}

}  // namespace srm::logic
