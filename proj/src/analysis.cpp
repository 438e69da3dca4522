#include "kboxkit/analysis.hpp"

#include "kboxkit/construct.hpp"
#include "kboxkit/error.hpp"

namespace kboxkit {

const char* to_string(BoundClass cls) {
  switch (cls) {
    case BoundClass::Any: return "any";
    case BoundClass::Standardized: return "standardized";
    case BoundClass::Semicopula: return "semicopula";
  }
  return "unknown";
}

BoundClass parse_bound_class(const std::string& text) {
  if (text == "any") return BoundClass::Any;
  if (text == "standardized") return BoundClass::Standardized;
  if (text == "semicopula") return BoundClass::Semicopula;
  throw invalid_parameter("bound class must be any, standardized or semicopula");
}

const char* to_string(CoherenceSide side) { return side == CoherenceSide::Upper ? "upper" : "lower"; }

CoherenceSide parse_side(const std::string& text) {
  if (text == "upper") return CoherenceSide::Upper;
  if (text == "lower") return CoherenceSide::Lower;
  throw invalid_parameter("side must be 'upper' or 'lower', got '" + text + "'");
}

void require_bound_class(const GridFunction& lower, const GridFunction& upper, BoundClass cls) {
  require_ordered(lower, upper);
  if (cls == BoundClass::Any) return;
  for (const auto* f : {&lower, &upper}) {
    const char* which = f == &lower ? "lower" : "upper";
    auto report = structural_check(*f);
    if (!report.grounded || !report.one_increasing) {
      throw precondition_error(std::string(which) + " bound is not grounded and 1-increasing");
    }
    if (cls == BoundClass::Standardized && report.value_at_one != 1) {
      throw precondition_error(std::string(which) + " bound does not take the value 1 at the all-ones node");
    }
    if (cls == BoundClass::Semicopula && !report.uniform_marginals) {
      throw precondition_error(std::string(which) + " bound does not have uniform marginals");
    }
  }
}

SandwichResult solve_sandwich(const GridFunction& lower, const GridFunction& upper, int k, SandwichGoal goal,
                              const std::optional<NodeIndex>& target, lp::Mode mode, BoxFamily family) {
  require_ordered(lower, upper);
  require_order(lower.mesh, k);
  const GridMesh& mesh = lower.mesh;
  const std::size_t nodes = mesh.node_count();
  std::vector<int> column(nodes, -1);
  std::vector<std::size_t> loose;
  for (std::size_t y = 0; y < nodes; ++y) {
    if (upper[y] > lower[y]) {
      column[y] = static_cast<int>(loose.size());
      loose.push_back(y);
    }
  }
  BoxBasis basis = make_box_basis(mesh, k, family);
  SandwichResult out;

  lp::LpProblem<Rational> problem(static_cast<int>(loose.size()),
                                  goal == SandwichGoal::Maximize ? lp::Sense::Maximize : lp::Sense::Minimize);
  for (std::size_t i = 0; i < loose.size(); ++i) {
    problem.lower[i] = lower[loose[i]];
    problem.upper[i] = upper[loose[i]];
  }
  if (target && goal != SandwichGoal::Feasible) {
    const std::size_t ft = mesh.flat_index(*target);
    if (column[ft] >= 0) problem.objective(column[ft]) = 1;
  }
  std::vector<Vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (std::size_t r = 0; r < basis.boxes.size(); ++r) {
    Vector<Rational> row = Vector<Rational>::Zero(static_cast<Eigen::Index>(loose.size()));
    Rational fixed = 0;
    bool any_loose = false;
    for (const auto& [node, sign] : basis.vertices[r]) {
      if (column[node] >= 0) {
        row(column[node]) += sign;
        any_loose = true;
      } else {
        fixed += sign * lower[node];
      }
    }
    if (!any_loose) {
      if (fixed < 0) return out;  // a fully pinned box already has negative volume
      continue;
    }
    rows.push_back(std::move(row));
    rhs.push_back(-fixed);
  }
  problem.rows = Matrix<Rational>::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(loose.size()));
  problem.rhs = Vector<Rational>::Zero(static_cast<Eigen::Index>(rows.size()));
  problem.relations.assign(rows.size(), lp::Relation::GreaterEqual);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    problem.rows.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    problem.rhs(static_cast<Eigen::Index>(i)) = rhs[i];
  }

  std::vector<Rational> values = lower.values;
  if (!loose.empty()) {
    auto sol = lp::solve_in_mode(problem, mode);
    if (sol.status == lp::Status::Infeasible) return out;
    if (sol.status != lp::Status::Optimal) throw internal_error("sandwich program reported unbounded");
    for (std::size_t i = 0; i < loose.size(); ++i) {
      Rational v = sol.primal(static_cast<Eigen::Index>(i));
      // float mode may land a hair outside the box
      if (v < lower[loose[i]]) v = lower[loose[i]];
      if (v > upper[loose[i]]) v = upper[loose[i]];
      values[loose[i]] = v;
    }
  }
  out.feasible = true;
  out.function = GridFunction(mesh, std::move(values), std::string("sandwich"));
  if (target) out.objective = out.function->at(*target);
  return out;
}

AslVerdict check_asl(const GridFunction& lower, const GridFunction& upper, int k, BoundClass cls, lp::Mode mode) {
  require_bound_class(lower, upper, cls);
  FunctionalEngine engine(lower.mesh, k, mode);
  MinLResult mn = engine.min_l(lower, upper);
  SandwichResult sw = solve_sandwich(lower, upper, k, SandwichGoal::Feasible, std::nullopt, mode);
  const bool by_min_l = mn.value >= 0;
  if (by_min_l != sw.feasible) {
    throw internal_error("min-L program (" + format_rational(mn.value) + ") and sandwich program (" +
                         (sw.feasible ? "feasible" : "infeasible") + ") disagree");
  }
  AslVerdict verdict;
  verdict.satisfied = by_min_l;
  verdict.min_l_value = mn.value;
  if (verdict.satisfied) {
    verdict.feasible = std::move(sw.function);
    if (mode == lp::Mode::Exact && !check_k_increasing(*verdict.feasible, k).passed) {
      throw internal_error("sandwich solution is not k-increasing on the mesh");
    }
  } else {
    if (mode == lp::Mode::Exact && !(l_value(lower, upper, mn.support) < 0)) {
      throw internal_error("extracted union does not have negative L_k");
    }
    verdict.violating_union = std::move(mn.support);
  }
  return verdict;
}

namespace {

Rational pointwise_extreme(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
                           SandwichGoal goal, lp::Mode mode) {
  auto result = solve_sandwich(lower, upper, k, goal, x, mode);
  if (!result.feasible) throw domain_error("no k-increasing function lies between the bounds");
  return result.objective;
}

}  // namespace

Rational pointwise_sup(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k, lp::Mode mode) {
  return pointwise_extreme(lower, upper, x, k, SandwichGoal::Maximize, mode);
}

Rational pointwise_inf(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k, lp::Mode mode) {
  return pointwise_extreme(lower, upper, x, k, SandwichGoal::Minimize, mode);
}

CoherenceReport check_coherence(const GridFunction& lower, const GridFunction& upper, int k, CoherenceSide side,
                                BoundClass cls, lp::Mode mode) {
  AslVerdict asl = check_asl(lower, upper, k, cls, mode);
  if (!asl.satisfied) throw SureLossError("bounds incur sure loss; coherence is undefined", *asl.violating_union);
  const GridMesh& mesh = lower.mesh;
  for (std::size_t y = 0; y < mesh.node_count(); ++y) {
    if (mesh.is_cube_vertex(mesh.node_at(y)) && lower[y] != upper[y]) {
      throw precondition_error("bounds differ at a unit-cube vertex");
    }
  }
  FunctionalEngine engine(mesh, k, mode);
  CoherenceReport report;
  report.side = side;
  report.k = k;
  for (std::size_t y = 0; y < mesh.node_count(); ++y) {
    CoherenceRecord rec;
    rec.node = mesh.node_at(y);
    rec.gap = upper[y] - lower[y];
    if (side == CoherenceSide::Upper) {
      rec.functional = engine.p_neg(lower, upper, rec.node);
      rec.extreme = pointwise_sup(lower, upper, rec.node, k, mode);
      rec.extreme_test = rec.extreme == upper[y];
    } else {
      rec.functional = engine.p_pos(lower, upper, rec.node);
      rec.extreme = pointwise_inf(lower, upper, rec.node, k, mode);
      rec.extreme_test = rec.extreme == lower[y];
    }
    rec.functional_test = rec.functional.value >= rec.gap;
    rec.equality = rec.functional.value == rec.gap;
    if (rec.functional_test != rec.extreme_test && mode == lp::Mode::Exact) {
      throw internal_error("functional and sandwich coherence tests disagree at node " + std::to_string(y));
    }
    if (!(rec.functional_test && rec.extreme_test)) {
      report.coherent = false;
      report.witnesses.push_back(rec.node);
    }
    report.records.push_back(std::move(rec));
  }
  if (cls == BoundClass::Semicopula && k >= 2) {
    report.bound_lipschitz = lipschitz_check(side == CoherenceSide::Upper ? upper : lower).passed;
  }
  return report;
}

LipschitzReport lipschitz_check(const GridFunction& f) {
  LipschitzReport report;
  const GridMesh& mesh = f.mesh;
  for (std::size_t flat = 0; flat < mesh.node_count(); ++flat) {
    NodeIndex node = mesh.node_at(flat);
    for (int axis = 0; axis < mesh.dim(); ++axis) {
      if (node[axis] + 1 >= mesh.axis_size(axis)) continue;
      NodeIndex next = node;
      ++next[axis];
      Rational jump = f.at(next) - f[flat];
      if (jump < 0) jump = -jump;
      Rational distance = mesh.axis(axis)[next[axis]] - mesh.axis(axis)[node[axis]];
      if (jump > distance) {
        report.passed = false;
        report.violations.push_back({node, next, jump, distance});
      }
    }
  }
  return report;
}

}  // namespace kboxkit
