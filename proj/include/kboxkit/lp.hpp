#ifndef KBOXKIT_LP_HPP
#define KBOXKIT_LP_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kboxkit/error.hpp"
#include "kboxkit/rational.hpp"

namespace kboxkit::lp {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Status status);

/// Linear program over `Scalar`:
///   optimize objective . x  subject to  row_i . x (rel_i) rhs_i,  lower <= x <= upper.
/// Missing bounds mean the variable is unbounded in that direction; the
/// default lower bound is 0.
template <typename Scalar>
struct LpProblem {
  Sense sense = Sense::Minimize;
  Vector<Scalar> objective;
  Matrix<Scalar> rows;
  std::vector<Relation> relations;
  Vector<Scalar> rhs;
  std::vector<std::optional<Scalar>> lower;
  std::vector<std::optional<Scalar>> upper;

  LpProblem() = default;
  explicit LpProblem(int num_vars, Sense s = Sense::Minimize);

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.rows()); }

  /// Appends a constraint row; returns its index.
  int add_row(const Vector<Scalar>& coefficients, Relation relation, const Scalar& value);

  void set_free(int var) {
    lower[var].reset();
    upper[var].reset();
  }

  /// Throws invalid-parameter when dimensions disagree or bounds cross.
  void validate() const;
};

template <typename Scalar>
struct LpSolution {
  Status status = Status::Infeasible;
  Scalar value{};
  Vector<Scalar> primal;
  /// One multiplier per constraint row, signed so that for a minimization the
  /// Lagrangian objective - dual . (rows x - rhs) is stationary; >= rows carry
  /// nonnegative and <= rows nonpositive multipliers.
  Vector<Scalar> dual;
  int pivots = 0;
};

struct SolveOptions {
  /// Optional plain-text dump of the final tableau.
  std::ostream* tableau_dump = nullptr;
};

template <typename Scalar>
struct Tolerance;

template <>
struct Tolerance<Rational> {
  static bool is_zero(const Rational& v) { return v == 0; }
  static bool positive(const Rational& v) { return v > 0; }
  static bool negative(const Rational& v) { return v < 0; }
};

template <>
struct Tolerance<double> {
  static constexpr double eps = 1e-9;
  static bool is_zero(double v) { return v > -eps && v < eps; }
  static bool positive(double v) { return v >= eps; }
  static bool negative(double v) { return v <= -eps; }
};

/// Two-phase dense-tableau primal simplex with Bland's rule.
template <typename Scalar>
LpSolution<Scalar> solve(const LpProblem<Scalar>& problem, const SolveOptions& options = {});

/// Plain-text listing of a problem (debug aid).
template <typename Scalar>
std::string to_text(const LpProblem<Scalar>& problem);

/// Converts every coefficient of a rational problem to another scalar type.
template <typename Scalar>
LpProblem<Scalar> convert(const LpProblem<Rational>& problem);

enum class Mode { Exact, Float };

const char* to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// Solves a rational problem in the requested arithmetic and reports the
/// result as rationals (float results are converted exactly from double).
LpSolution<Rational> solve_in_mode(const LpProblem<Rational>& problem, Mode mode,
                                   const SolveOptions& options = {});

extern template struct LpProblem<Rational>;
extern template struct LpProblem<double>;
extern template LpSolution<Rational> solve<Rational>(const LpProblem<Rational>&, const SolveOptions&);
extern template LpSolution<double> solve<double>(const LpProblem<double>&, const SolveOptions&);

}  // namespace kboxkit::lp

#endif  // KBOXKIT_LP_HPP
