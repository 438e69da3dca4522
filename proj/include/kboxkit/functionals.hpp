#ifndef KBOXKIT_FUNCTIONALS_HPP
#define KBOXKIT_FUNCTIONALS_HPP

#include <optional>
#include <vector>

#include "kboxkit/error.hpp"
#include "kboxkit/kbox.hpp"
#include "kboxkit/lp.hpp"
#include "kboxkit/mesh.hpp"

namespace kboxkit {

/// Which multiplicity sign at the query node the infimum ranges over.
enum class Side {
  Negative,  // unions with m(x) < 0: the functional entering gamma
  Positive,  // unions with m(x) > 0: the functional entering delta
};

enum class InfimumStatus {
  Finite,
  Empty,      // no union has the required sign; value carries the convention 0
  Unbounded,  // L_k is negative on some union, so the ratio is unbounded below
};

const char* to_string(InfimumStatus status);

/// inf over unions D with the required sign of L_k(D) / |m_D(x)|.
struct FunctionalValue {
  InfimumStatus status = InfimumStatus::Empty;
  Rational value;
  std::optional<BoxUnion> witness;
  bool attained = false;
};

/// Optimum of L_k over the unions normalized to total weight one. Its sign
/// decides avoidance of sure loss on the mesh.
struct MinLResult {
  Rational value;
  /// Optimal union scaled to integer counts.
  BoxUnion support{1};
};

/// Raised when the bounds incur sure loss; carries a union with L_k < 0.
class SureLossError : public Error {
 public:
  SureLossError(const std::string& what, BoxUnion witness)
      : Error(ErrorKind::PreconditionError, what), witness_(std::move(witness)) {}
  const BoxUnion& witness() const { return witness_; }

 private:
  BoxUnion witness_;
};

/// Holds the LP column basis for one (mesh, k) and evaluates the functionals
/// for any bound pair on that mesh.
class FunctionalEngine {
 public:
  FunctionalEngine(const GridMesh& mesh, int k, lp::Mode mode = lp::Mode::Exact,
                   BoxFamily family = BoxFamily::Elementary);

  int order() const { return basis_.k; }
  lp::Mode mode() const { return mode_; }
  const BoxBasis& basis() const { return basis_; }
  const GridMesh& mesh() const { return mesh_; }

  FunctionalValue infimum(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x,
                          Side side) const;
  FunctionalValue p_neg(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x) const {
    return infimum(lower, upper, x, Side::Negative);
  }
  FunctionalValue p_pos(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x) const {
    return infimum(lower, upper, x, Side::Positive);
  }

  /// min{P(x), B(x) - A(x)}; throws precondition-error when P is unbounded.
  Rational gamma(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x) const;
  Rational delta(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x) const;

  MinLResult min_l(const GridFunction& lower, const GridFunction& upper) const;

  /// True when some basis box has `x` as a vertex of the requested sign.
  bool has_union_with_sign(const NodeIndex& x, Side side) const;

 private:
  void check_pair(const GridFunction& lower, const GridFunction& upper) const;

  GridMesh mesh_;
  BoxBasis basis_;
  lp::Mode mode_;
};

FunctionalValue p_neg(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
                      lp::Mode mode = lp::Mode::Exact);
FunctionalValue p_pos(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
                      lp::Mode mode = lp::Mode::Exact);
Rational gamma(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
               lp::Mode mode = lp::Mode::Exact);
Rational delta(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
               lp::Mode mode = lp::Mode::Exact);

/// Exhaustive minimum over all multisets of at most `max_boxes` mesh k-boxes.
/// Independent of the LP: it enumerates every box (not just elementary ones)
/// and evaluates L_k directly.
FunctionalValue brute_force_infimum(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x,
                                    int k, Side side, int max_boxes);

struct SumInequalityRecord {
  NodeIndex node;
  FunctionalValue neg;
  FunctionalValue pos;
  Rational gap;  // B(x) - A(x)
  bool holds = true;
};

struct SumInequalityReport {
  std::vector<SumInequalityRecord> records;
  std::vector<NodeIndex> violations;
};

/// Evaluates P_neg(x) + P_pos(x) >= B(x) - A(x) at every node. Requires
/// L_k >= 0 on all unions and A = B at the unit-cube vertices.
SumInequalityReport check_sum_inequality(const GridFunction& lower, const GridFunction& upper, int k,
                                         lp::Mode mode = lp::Mode::Exact);

struct FunctionalRecord {
  NodeIndex node;
  FunctionalValue neg;
  FunctionalValue pos;
  std::optional<Rational> gamma;  // absent when the functional is unbounded
  std::optional<Rational> delta;
};

/// Per-node table of both functionals and their capped forms.
std::vector<FunctionalRecord> functional_table(const GridFunction& lower, const GridFunction& upper, int k,
                                               lp::Mode mode = lp::Mode::Exact,
                                               const std::vector<NodeIndex>& nodes = {});

/// Integer-count union from nonnegative rational weights (clears denominators).
BoxUnion union_from_weights(const std::vector<KBox>& boxes, const std::vector<Rational>& weights, int k);

}  // namespace kboxkit

#endif  // KBOXKIT_FUNCTIONALS_HPP
