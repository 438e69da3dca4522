#ifndef KBOXKIT_ANALYSIS_HPP
#define KBOXKIT_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "kboxkit/functionals.hpp"

namespace kboxkit {

/// Structural class the bounds are declared to belong to.
enum class BoundClass { Any, Standardized, Semicopula };

const char* to_string(BoundClass cls);
BoundClass parse_bound_class(const std::string& text);

/// Throws precondition-error unless lower <= upper and both bounds pass the
/// structural checks of `cls`.
void require_bound_class(const GridFunction& lower, const GridFunction& upper, BoundClass cls);

/// Avoidance of sure loss on the mesh. Exactly one of `violating_union` and
/// `feasible` is present.
struct AslVerdict {
  bool satisfied = false;
  Rational min_l_value;  // optimum of L_k over unions of total weight one
  std::optional<BoxUnion> violating_union;
  std::optional<GridFunction> feasible;
};

/// Runs the normalized min-L program and the direct sandwich program and
/// demands that they agree; disagreement raises internal-invariant-error.
AslVerdict check_asl(const GridFunction& lower, const GridFunction& upper, int k,
                     BoundClass cls = BoundClass::Standardized, lp::Mode mode = lp::Mode::Exact);

enum class SandwichGoal { Feasible, Maximize, Minimize };

struct SandwichResult {
  bool feasible = false;
  std::optional<GridFunction> function;  // optimal (or feasible) sandwiched k-increasing function
  Rational objective;
};

/// Variables C(y) in [A(y), B(y)], constraints V_{C,k}(R) >= 0 for every box of
/// the chosen family; optionally optimizes C(target).
SandwichResult solve_sandwich(const GridFunction& lower, const GridFunction& upper, int k, SandwichGoal goal,
                              const std::optional<NodeIndex>& target = std::nullopt,
                              lp::Mode mode = lp::Mode::Exact, BoxFamily family = BoxFamily::Elementary);

/// max / min C(x) over k-increasing C with A <= C <= B on the mesh.
Rational pointwise_sup(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
                       lp::Mode mode = lp::Mode::Exact);
Rational pointwise_inf(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
                       lp::Mode mode = lp::Mode::Exact);

enum class CoherenceSide { Upper, Lower };

const char* to_string(CoherenceSide side);
CoherenceSide parse_side(const std::string& text);

struct CoherenceRecord {
  NodeIndex node;
  FunctionalValue functional;  // P_neg for the upper side, P_pos for the lower side
  Rational gap;                // B(x) - A(x)
  Rational extreme;            // pointwise sup (upper) or inf (lower)
  bool functional_test = true; // functional >= gap
  bool extreme_test = true;    // sup == B(x) or inf == A(x)
  bool equality = false;       // functional == gap
};

struct CoherenceReport {
  CoherenceSide side = CoherenceSide::Upper;
  int k = 1;
  std::vector<CoherenceRecord> records;
  bool coherent = true;
  std::vector<NodeIndex> witnesses;  // nodes failing
  /// For semicopula bounds with k >= 2: 1-Lipschitz test of the coherent bound.
  std::optional<bool> bound_lipschitz;
};

/// Per-node coherence of the upper (or lower) bound. Both per-node criteria
/// are evaluated and must agree. Requires L_k >= 0 and bounds that coincide
/// at the unit-cube vertices.
CoherenceReport check_coherence(const GridFunction& lower, const GridFunction& upper, int k, CoherenceSide side,
                                BoundClass cls = BoundClass::Standardized, lp::Mode mode = lp::Mode::Exact);

inline CoherenceReport coherence_upper(const GridFunction& lower, const GridFunction& upper, int k,
                                       BoundClass cls = BoundClass::Standardized,
                                       lp::Mode mode = lp::Mode::Exact) {
  return check_coherence(lower, upper, k, CoherenceSide::Upper, cls, mode);
}

inline CoherenceReport coherence_lower(const GridFunction& lower, const GridFunction& upper, int k,
                                       BoundClass cls = BoundClass::Standardized,
                                       lp::Mode mode = lp::Mode::Exact) {
  return check_coherence(lower, upper, k, CoherenceSide::Lower, cls, mode);
}

struct LipschitzViolation {
  NodeIndex from;
  NodeIndex to;
  Rational jump;
  Rational distance;
};

struct LipschitzReport {
  bool passed = true;
  std::vector<LipschitzViolation> violations;
};

/// |f(u) - f(v)| <= |u - v|_1 over all axis-neighbour node pairs.
LipschitzReport lipschitz_check(const GridFunction& f);

}  // namespace kboxkit

#endif  // KBOXKIT_ANALYSIS_HPP
