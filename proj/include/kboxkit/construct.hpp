#ifndef KBOXKIT_CONSTRUCT_HPP
#define KBOXKIT_CONSTRUCT_HPP

#include <optional>
#include <vector>

#include "kboxkit/functionals.hpp"

namespace kboxkit {

enum class Direction { Below, Above };

const char* to_string(Direction direction);
Direction parse_direction(const std::string& text);

struct SweepStep {
  NodeIndex node;
  Rational old_value;
  /// gamma (from below, added) or delta (from above, subtracted); always >= 0.
  Rational change;
};

struct SweepTrace {
  Direction direction = Direction::Below;
  int k = 1;
  std::vector<NodeIndex> order;
  std::vector<SweepStep> steps;
  GridFunction result;
};

/// A(x) + gamma(x) at x, A elsewhere.
GridFunction raise_step(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
                        lp::Mode mode = lp::Mode::Exact);
/// B(x) - delta(x) at x, B elsewhere.
GridFunction lower_step(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
                        lp::Mode mode = lp::Mode::Exact);

/// Canonical row-major node order.
std::vector<NodeIndex> lexicographic_order(const GridMesh& mesh);

/// One pass of raise steps (from below) or lower steps (from above) over every
/// node. Refuses with a precondition-error when L_k is negative on some union.
/// `order`, when given, must be a permutation of the mesh nodes.
SweepTrace sweep(const GridFunction& lower, const GridFunction& upper, int k, Direction direction,
                 const std::optional<std::vector<NodeIndex>>& order = std::nullopt,
                 lp::Mode mode = lp::Mode::Exact);

inline SweepTrace sweep_from_below(const GridFunction& lower, const GridFunction& upper, int k,
                                   const std::optional<std::vector<NodeIndex>>& order = std::nullopt,
                                   lp::Mode mode = lp::Mode::Exact) {
  return sweep(lower, upper, k, Direction::Below, order, mode);
}

inline SweepTrace sweep_from_above(const GridFunction& lower, const GridFunction& upper, int k,
                                   const std::optional<std::vector<NodeIndex>>& order = std::nullopt,
                                   lp::Mode mode = lp::Mode::Exact) {
  return sweep(lower, upper, k, Direction::Above, order, mode);
}

struct KIncreasingReport {
  bool passed = true;
  std::uint64_t boxes_checked = 0;
  std::optional<KBox> violating_box;  // first in canonical order
  Rational volume;
};

/// Checks V_{f,k}(R) >= 0 on every mesh k-box.
KIncreasingReport check_k_increasing(const GridFunction& f, int k);

}  // namespace kboxkit

#endif  // KBOXKIT_CONSTRUCT_HPP
