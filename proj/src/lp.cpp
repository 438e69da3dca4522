#include "kboxkit/lp.hpp"

#include <sstream>

namespace kboxkit::lp {

const char* to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

const char* to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "float"; }

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::Exact;
  if (text == "float") return Mode::Float;
  throw invalid_parameter("mode must be 'exact' or 'float', got '" + text + "'");
}

template <typename Scalar>
LpProblem<Scalar>::LpProblem(int num_vars, Sense s)
    : sense(s),
      objective(Vector<Scalar>::Zero(num_vars)),
      rows(0, num_vars),
      rhs(0),
      lower(static_cast<std::size_t>(num_vars), Scalar(0)),
      upper(static_cast<std::size_t>(num_vars)) {}

template <typename Scalar>
int LpProblem<Scalar>::add_row(const Vector<Scalar>& coefficients, Relation relation, const Scalar& value) {
  if (coefficients.size() != objective.size()) throw invalid_parameter("constraint width differs from objective width");
  const auto r = rows.rows();
  rows.conservativeResize(r + 1, objective.size());
  rows.row(r) = coefficients.transpose();
  rhs.conservativeResize(r + 1);
  rhs(r) = value;
  relations.push_back(relation);
  return static_cast<int>(r);
}

template <typename Scalar>
void LpProblem<Scalar>::validate() const {
  const auto n = objective.size();
  if (rows.cols() != n && rows.rows() > 0) throw invalid_parameter("constraint width differs from objective width");
  if (rows.rows() != rhs.size() || static_cast<std::size_t>(rows.rows()) != relations.size()) {
    throw invalid_parameter("row count, relation count and right-hand side length differ");
  }
  if (lower.size() != static_cast<std::size_t>(n) || upper.size() != static_cast<std::size_t>(n)) {
    throw invalid_parameter("bound vectors must have one entry per variable");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (lower[j] && upper[j] && *upper[j] < *lower[j]) throw invalid_parameter("variable bounds cross");
  }
}

namespace {

enum class ColumnKind { Shift, Mirror, Free };

struct VariableMap {
  ColumnKind kind;
  int column;  // first structural column
};

template <typename Scalar>
class Tableau {
 public:
  using Tol = Tolerance<Scalar>;

  Tableau(int rows, int cols) : t_(Matrix<Scalar>::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  Scalar& at(int r, int c) { return t_(r, c); }
  const Scalar& at(int r, int c) const { return t_(r, c); }
  Scalar& rhs(int r) { return t_(r, cols()); }
  Scalar& cost(int c) { return t_(rows(), c); }
  Scalar& neg_value() { return t_(rows(), cols()); }

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int c) {
    const Scalar piv = t_(r, c);
    nz_.clear();
    for (int j = 0; j <= cols(); ++j) {
      Scalar& v = t_(r, j);
      if (Tol::is_zero(v)) {
        v = Scalar(0);
        continue;
      }
      v /= piv;
      nz_.push_back(j);
    }
    for (int i = 0; i <= rows(); ++i) {
      if (i == r) continue;
      const Scalar f = t_(i, c);
      if (Tol::is_zero(f)) continue;
      for (int j : nz_) t_(i, j) -= f * t_(r, j);
      t_(i, c) = Scalar(0);
    }
    basis_[r] = c;
    ++pivots_;
  }

  /// Bland: first improving column, then smallest-index leaving variable.
  /// Returns false when the current basis is optimal.
  enum class Step { Optimal, Pivoted, Unbounded };
  Step bland_step(const std::vector<bool>& barred) {
    int enter = -1;
    for (int j = 0; j < cols(); ++j) {
      if (!barred[j] && Tol::negative(t_(rows(), j))) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return Step::Optimal;
    int leave = -1;
    Scalar best{};
    for (int i = 0; i < rows(); ++i) {
      const Scalar& a = t_(i, enter);
      if (!Tol::positive(a)) continue;
      Scalar ratio = t_(i, cols()) / a;
      if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return Step::Unbounded;
    pivot(leave, enter);
    return Step::Pivoted;
  }

  int pivots() const { return pivots_; }

  void dump(std::ostream& out) const {
    out << "tableau " << rows() << " x " << cols() << "\n";
    for (int i = 0; i <= rows(); ++i) {
      out << (i < rows() ? "x" + std::to_string(basis_[i]) : std::string("obj")) << " |";
      for (int j = 0; j <= cols(); ++j) out << ' ' << t_(i, j);
      out << "\n";
    }
  }

 private:
  Matrix<Scalar> t_;
  std::vector<int> basis_;
  std::vector<int> nz_;
  int pivots_ = 0;
};

}  // namespace

template <typename Scalar>
LpSolution<Scalar> solve(const LpProblem<Scalar>& problem, const SolveOptions& options) {
  using Tol = Tolerance<Scalar>;
  problem.validate();
  const int n = problem.num_vars();
  const int m = problem.num_rows();
  const Scalar sense_sign = problem.sense == Sense::Maximize ? Scalar(-1) : Scalar(1);

  // variable substitution into nonnegative structural columns
  std::vector<VariableMap> vars(n);
  std::vector<Scalar> shift(n, Scalar(0));
  int structural = 0;
  int bound_rows = 0;
  for (int j = 0; j < n; ++j) {
    const auto& lo = problem.lower[j];
    const auto& hi = problem.upper[j];
    if (lo) {
      vars[j] = {ColumnKind::Shift, structural++};
      shift[j] = *lo;
      if (hi) ++bound_rows;
    } else if (hi) {
      vars[j] = {ColumnKind::Mirror, structural++};
      shift[j] = *hi;
    } else {
      vars[j] = {ColumnKind::Free, structural};
      structural += 2;
    }
  }
  const int total_rows = m + bound_rows;

  Matrix<Scalar> a = Matrix<Scalar>::Zero(total_rows, structural);
  Vector<Scalar> b = Vector<Scalar>::Zero(total_rows);
  std::vector<Relation> rel(total_rows, Relation::LessEqual);
  for (int i = 0; i < m; ++i) {
    b(i) = problem.rhs(i);
    rel[i] = problem.relations[i];
    for (int j = 0; j < n; ++j) {
      const Scalar& coef = problem.rows(i, j);
      if (Tol::is_zero(coef)) continue;
      const auto& vm = vars[j];
      switch (vm.kind) {
        case ColumnKind::Shift:
          a(i, vm.column) += coef;
          b(i) -= coef * shift[j];
          break;
        case ColumnKind::Mirror:
          a(i, vm.column) -= coef;
          b(i) -= coef * shift[j];
          break;
        case ColumnKind::Free:
          a(i, vm.column) += coef;
          a(i, vm.column + 1) -= coef;
          break;
      }
    }
  }
  {
    int r = m;
    for (int j = 0; j < n; ++j) {
      if (vars[j].kind == ColumnKind::Shift && problem.upper[j]) {
        a(r, vars[j].column) = Scalar(1);
        b(r) = *problem.upper[j] - shift[j];
        rel[r] = Relation::LessEqual;
        ++r;
      }
    }
  }

  // normalize to b >= 0; a zero right-hand side on a >= row is flipped so its
  // slack can start in the basis
  std::vector<bool> flipped(total_rows, false);
  for (int i = 0; i < total_rows; ++i) {
    bool flip = Tol::negative(b(i)) || (Tol::is_zero(b(i)) && rel[i] == Relation::GreaterEqual);
    if (!flip) continue;
    flipped[i] = true;
    a.row(i) *= Scalar(-1);
    b(i) = -b(i);
    if (rel[i] == Relation::LessEqual) {
      rel[i] = Relation::GreaterEqual;
    } else if (rel[i] == Relation::GreaterEqual) {
      rel[i] = Relation::LessEqual;
    }
  }

  int slack_count = 0;
  int artificial_count = 0;
  for (int i = 0; i < total_rows; ++i) {
    if (rel[i] != Relation::Equal) ++slack_count;
    if (rel[i] != Relation::LessEqual) ++artificial_count;
  }
  const int slack_begin = structural;
  const int art_begin = structural + slack_count;
  const int cols = art_begin + artificial_count;

  Tableau<Scalar> tab(total_rows, cols);
  std::vector<int> identity_col(total_rows);
  {
    int s = slack_begin;
    int art = art_begin;
    for (int i = 0; i < total_rows; ++i) {
      for (int j = 0; j < structural; ++j) {
        if (!Tol::is_zero(a(i, j))) tab.at(i, j) = a(i, j);
      }
      tab.rhs(i) = b(i);
      if (rel[i] == Relation::LessEqual) {
        tab.at(i, s) = Scalar(1);
        identity_col[i] = s++;
      } else {
        if (rel[i] == Relation::GreaterEqual) tab.at(i, s++) = Scalar(-1);
        tab.at(i, art) = Scalar(1);
        identity_col[i] = art++;
      }
      tab.basis()[i] = identity_col[i];
    }
  }

  std::vector<bool> barred(cols, false);
  LpSolution<Scalar> solution;

  if (artificial_count > 0) {
    for (int i = 0; i < total_rows; ++i) {
      if (tab.basis()[i] < art_begin) continue;
      for (int j = 0; j < art_begin; ++j) tab.cost(j) -= tab.at(i, j);
      tab.neg_value() -= tab.rhs(i);
    }
    while (true) {
      auto step = tab.bland_step(barred);
      if (step == Tableau<Scalar>::Step::Optimal) break;
      if (step == Tableau<Scalar>::Step::Unbounded) throw internal_error("phase one reported unbounded");
    }
    if (Tol::positive(-tab.neg_value())) {
      solution.status = Status::Infeasible;
      solution.pivots = tab.pivots();
      if (options.tableau_dump) tab.dump(*options.tableau_dump);
      return solution;
    }
    for (int i = 0; i < total_rows; ++i) {
      if (tab.basis()[i] < art_begin) continue;
      for (int j = 0; j < art_begin; ++j) {
        if (!Tol::is_zero(tab.at(i, j))) {
          tab.pivot(i, j);
          break;
        }
      }
    }
    for (int j = art_begin; j < cols; ++j) barred[j] = true;
  }

  // phase two costs over structural columns
  std::vector<Scalar> cost(cols, Scalar(0));
  Scalar offset(0);
  for (int j = 0; j < n; ++j) {
    const Scalar c = sense_sign * problem.objective(j);
    const auto& vm = vars[j];
    switch (vm.kind) {
      case ColumnKind::Shift:
        cost[vm.column] = c;
        offset += c * shift[j];
        break;
      case ColumnKind::Mirror:
        cost[vm.column] = -c;
        offset += c * shift[j];
        break;
      case ColumnKind::Free:
        cost[vm.column] = c;
        cost[vm.column + 1] = -c;
        break;
    }
  }
  for (int j = 0; j <= cols; ++j) {
    Scalar d = j < cols ? cost[j] : Scalar(0);
    for (int i = 0; i < total_rows; ++i) {
      const Scalar& cb = cost[tab.basis()[i]];
      if (!Tol::is_zero(cb)) d -= cb * tab.at(i, j);
    }
    if (j < cols) {
      tab.cost(j) = d;
    } else {
      tab.neg_value() = d;
    }
  }
  while (true) {
    auto step = tab.bland_step(barred);
    if (step == Tableau<Scalar>::Step::Optimal) break;
    if (step == Tableau<Scalar>::Step::Unbounded) {
      solution.status = Status::Unbounded;
      solution.pivots = tab.pivots();
      if (options.tableau_dump) tab.dump(*options.tableau_dump);
      return solution;
    }
  }

  std::vector<Scalar> column_value(cols, Scalar(0));
  for (int i = 0; i < total_rows; ++i) column_value[tab.basis()[i]] = tab.rhs(i);
  solution.status = Status::Optimal;
  solution.primal = Vector<Scalar>::Zero(n);
  for (int j = 0; j < n; ++j) {
    const auto& vm = vars[j];
    switch (vm.kind) {
      case ColumnKind::Shift: solution.primal(j) = shift[j] + column_value[vm.column]; break;
      case ColumnKind::Mirror: solution.primal(j) = shift[j] - column_value[vm.column]; break;
      case ColumnKind::Free: solution.primal(j) = column_value[vm.column] - column_value[vm.column + 1]; break;
    }
  }
  solution.value = sense_sign * (offset - tab.neg_value());
  solution.dual = Vector<Scalar>::Zero(m);
  for (int i = 0; i < m; ++i) {
    Scalar y = -tab.cost(identity_col[i]);
    if (flipped[i]) y = -y;
    solution.dual(i) = sense_sign * y;
  }
  solution.pivots = tab.pivots();
  if (options.tableau_dump) tab.dump(*options.tableau_dump);
  return solution;
}

template <typename Scalar>
std::string to_text(const LpProblem<Scalar>& problem) {
  std::ostringstream out;
  out << (problem.sense == Sense::Minimize ? "minimize" : "maximize");
  for (int j = 0; j < problem.num_vars(); ++j) out << ' ' << problem.objective(j) << "*x" << j;
  out << "\n";
  for (int i = 0; i < problem.num_rows(); ++i) {
    for (int j = 0; j < problem.num_vars(); ++j) {
      if (problem.rows(i, j) != Scalar(0)) out << ' ' << problem.rows(i, j) << "*x" << j;
    }
    switch (problem.relations[i]) {
      case Relation::LessEqual: out << " <= "; break;
      case Relation::Equal: out << " = "; break;
      case Relation::GreaterEqual: out << " >= "; break;
    }
    out << problem.rhs(i) << "\n";
  }
  for (int j = 0; j < problem.num_vars(); ++j) {
    out << "x" << j << " in [";
    if (problem.lower[j]) {
      out << *problem.lower[j];
    } else {
      out << "-inf";
    }
    out << ", ";
    if (problem.upper[j]) {
      out << *problem.upper[j];
    } else {
      out << "inf";
    }
    out << "]\n";
  }
  return out.str();
}

template <typename Scalar>
LpProblem<Scalar> convert(const LpProblem<Rational>& problem) {
  LpProblem<Scalar> out(problem.num_vars(), problem.sense);
  for (int j = 0; j < problem.num_vars(); ++j) {
    out.objective(j) = scalar_cast<Scalar>(problem.objective(j));
    out.lower[j] = problem.lower[j] ? std::optional<Scalar>(scalar_cast<Scalar>(*problem.lower[j])) : std::nullopt;
    out.upper[j] = problem.upper[j] ? std::optional<Scalar>(scalar_cast<Scalar>(*problem.upper[j])) : std::nullopt;
  }
  out.rows = Matrix<Scalar>::Zero(problem.num_rows(), problem.num_vars());
  out.rhs = Vector<Scalar>::Zero(problem.num_rows());
  for (int i = 0; i < problem.num_rows(); ++i) {
    for (int j = 0; j < problem.num_vars(); ++j) out.rows(i, j) = scalar_cast<Scalar>(problem.rows(i, j));
    out.rhs(i) = scalar_cast<Scalar>(problem.rhs(i));
  }
  out.relations = problem.relations;
  return out;
}

LpSolution<Rational> solve_in_mode(const LpProblem<Rational>& problem, Mode mode, const SolveOptions& options) {
  if (mode == Mode::Exact) return solve(problem, options);
  auto fsol = solve(convert<double>(problem), options);
  LpSolution<Rational> out;
  out.status = fsol.status;
  out.pivots = fsol.pivots;
  if (fsol.status == Status::Optimal) {
    out.value = to_rational(fsol.value);
    out.primal.resize(fsol.primal.size());
    for (Eigen::Index j = 0; j < fsol.primal.size(); ++j) out.primal(j) = to_rational(fsol.primal(j));
    out.dual.resize(fsol.dual.size());
    for (Eigen::Index i = 0; i < fsol.dual.size(); ++i) out.dual(i) = to_rational(fsol.dual(i));
  }
  return out;
}

template struct LpProblem<Rational>;
template struct LpProblem<double>;
template LpSolution<Rational> solve<Rational>(const LpProblem<Rational>&, const SolveOptions&);
template LpSolution<double> solve<double>(const LpProblem<double>&, const SolveOptions&);
template std::string to_text<Rational>(const LpProblem<Rational>&);
template std::string to_text<double>(const LpProblem<double>&);
template LpProblem<Rational> convert<Rational>(const LpProblem<Rational>&);
template LpProblem<double> convert<double>(const LpProblem<Rational>&);

}  // namespace kboxkit::lp
