#ifndef SRM_LOGIC_BOXES_HPP
#define SRM_LOGIC_BOXES_HPP

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "srm/logic/formula.hpp"

namespace srm::logic {

// Formula outside the axis-aligned box fragment (or one whose disjunctive
// normal form explodes); callers route these to the SMT solver instead.
class UnsupportedFragment : public Error {
public:
  using Error::Error;
};

struct Interval {
  double lo;
  double hi;
  bool lo_open;    // true: lo excluded (strict >)
  bool hi_closed;  // true: hi included (<=)

  static Interval all();
  bool empty() const;
  void intersect(const Interval &other);
  // Any point of a non-empty interval.
  double pick() const;
};

// One DNF conjunct: per-variable interval constraints (missing variables are
// unconstrained). Regions in results are always non-empty.
using BoxRegion = std::map<std::string, Interval>;

// Disjunctive normal form over interval atoms. Throws UnsupportedFragment on
// multi-variable comparisons, free boolean variables, or size blowup.
std::vector<BoxRegion> to_box_dnf(const Formula &f, std::size_t max_regions = 100000);

// True iff the conjunction of the given box-fragment formulas has a model.
bool box_conjunction_satisfiable(std::span<const Formula> fs);

// A model of the conjunction (values only for constrained variables), or
// nullopt when unsatisfiable.
std::optional<std::map<std::string, double>> box_conjunction_witness(
    std::span<const Formula> fs);

}  // namespace srm::logic

#endif
