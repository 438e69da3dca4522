#include "kboxkit/functionals.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <algorithm>
#include <limits>

#include "kboxkit/error.hpp"

namespace kboxkit {

const char* to_string(InfimumStatus status) {
  switch (status) {
    case InfimumStatus::Finite: return "finite";
    case InfimumStatus::Empty: return "empty";
    case InfimumStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

BoxUnion union_from_weights(const std::vector<KBox>& boxes, const std::vector<Rational>& weights, int k) {
  BigInt scale = 1;
  for (const auto& w : weights) {
    if (w < 0) throw internal_error("negative box weight");
    if (w == 0) continue;
    BigInt d = denominator_of(w);
    scale = scale / boost::multiprecision::gcd(scale, d) * d;
  }
  BoxUnion dub(k);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (weights[i] == 0) continue;
    Rational count = weights[i] * Rational(scale);
    BigInt c = numerator_of(count);
    if (c > std::numeric_limits<std::int64_t>::max()) throw internal_error("box count overflows 64 bits");
    dub.add(boxes[i], c.convert_to<std::int64_t>());
  }
  return dub;
}

FunctionalEngine::FunctionalEngine(const GridMesh& mesh, int k, lp::Mode mode, BoxFamily family)
    : mesh_(mesh), mode_(mode) {
  require_order(mesh, k);
  basis_ = make_box_basis(mesh, k, family);
}

void FunctionalEngine::check_pair(const GridFunction& lower, const GridFunction& upper) const {
  if (!(lower.mesh == mesh_)) throw invalid_parameter("bound lives on a different mesh than the engine");
  require_ordered(lower, upper);
}

bool FunctionalEngine::has_union_with_sign(const NodeIndex& x, Side side) const {
  const std::size_t fx = mesh_.flat_index(x);
  const int want = side == Side::Negative ? -1 : 1;
  for (const auto& verts : basis_.vertices) {
    for (const auto& [node, sign] : verts) {
      if (node == fx && sign == want) return true;
    }
  }
  return false;
}

namespace {

// Columns: one weight per basis box, then one slack w_y per node with B > A.
// Objective sum_R V_B(R) t_R + sum_y (B - A)(y) w_y equals L_k of the weighted
// union once w_y = max(0, -mu_y), which the >= rows enforce at the optimum.
struct LBuilder {
  lp::LpProblem<Rational> problem;
  std::vector<int> slack_row;  // node -> row index or -1
  int box_count = 0;
};

LBuilder build_l_problem(const BoxBasis& basis, const GridFunction& lower, const GridFunction& upper) {
  const std::size_t nodes = lower.mesh.node_count();
  LBuilder b;
  b.box_count = static_cast<int>(basis.boxes.size());
  b.slack_row.assign(nodes, -1);
  std::vector<std::size_t> loose;
  for (std::size_t y = 0; y < nodes; ++y) {
    if (upper[y] > lower[y]) loose.push_back(y);
  }
  const int vars = b.box_count + static_cast<int>(loose.size());
  b.problem = lp::LpProblem<Rational>(vars, lp::Sense::Minimize);
  auto& p = b.problem;
  for (int r = 0; r < b.box_count; ++r) {
    Rational v = 0;
    for (const auto& [node, sign] : basis.vertices[r]) {
      if (sign > 0) {
        v += upper[node];
      } else {
        v -= upper[node];
      }
    }
    p.objective(r) = v;
  }
  p.rows = Matrix<Rational>::Zero(static_cast<Eigen::Index>(loose.size()), vars);
  p.rhs = Vector<Rational>::Zero(static_cast<Eigen::Index>(loose.size()));
  p.relations.assign(loose.size(), lp::Relation::GreaterEqual);
  for (std::size_t i = 0; i < loose.size(); ++i) {
    const int col = b.box_count + static_cast<int>(i);
    p.objective(col) = upper[loose[i]] - lower[loose[i]];
    p.rows(static_cast<Eigen::Index>(i), col) = 1;
    b.slack_row[loose[i]] = static_cast<int>(i);
  }
  for (int r = 0; r < b.box_count; ++r) {
    for (const auto& [node, sign] : basis.vertices[r]) {
      int row = b.slack_row[node];
      if (row >= 0) p.rows(row, r) += sign;
    }
  }
  return b;
}

std::vector<Rational> box_weights(const lp::LpSolution<Rational>& sol, int box_count) {
  std::vector<Rational> w(static_cast<std::size_t>(box_count));
  for (int r = 0; r < box_count; ++r) w[r] = sol.primal(r) > 0 ? sol.primal(r) : Rational(0);
  return w;
}

}  // namespace

FunctionalValue FunctionalEngine::infimum(const GridFunction& lower, const GridFunction& upper,
                                          const NodeIndex& x, Side side) const {
  check_pair(lower, upper);
  FunctionalValue out;
  if (!has_union_with_sign(x, side)) {
    out.status = InfimumStatus::Empty;
    out.value = 0;
    out.attained = false;
    return out;
  }
  LBuilder b = build_l_problem(basis_, lower, upper);
  const std::size_t fx = mesh_.flat_index(x);
  Vector<Rational> norm = Vector<Rational>::Zero(b.problem.num_vars());
  const int s = side == Side::Negative ? -1 : 1;
  for (int r = 0; r < b.box_count; ++r) {
    for (const auto& [node, sign] : basis_.vertices[r]) {
      if (node == fx) norm(r) += s * sign;
    }
  }
  b.problem.add_row(norm, lp::Relation::Equal, Rational(1));
  auto sol = lp::solve_in_mode(b.problem, mode_);
  switch (sol.status) {
    case lp::Status::Infeasible:
      out.status = InfimumStatus::Empty;
      out.value = 0;
      return out;
    case lp::Status::Unbounded:
      out.status = InfimumStatus::Unbounded;
      out.value = 0;
      return out;
    case lp::Status::Optimal:
      break;
  }
  out.status = InfimumStatus::Finite;
  out.value = sol.value;
  out.attained = true;
  if (mode_ == lp::Mode::Exact) {
    out.witness = union_from_weights(basis_.boxes, box_weights(sol, b.box_count), basis_.k);
  }
  return out;
}

Rational FunctionalEngine::gamma(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x) const {
  auto p = p_neg(lower, upper, x);
  if (p.status == InfimumStatus::Unbounded) {
    throw SureLossError("negative-side functional is unbounded below: L_k is negative on some union",
                        min_l(lower, upper).support);
  }
  Rational gap = upper.at(x) - lower.at(x);
  return std::min(p.value, gap);
}

Rational FunctionalEngine::delta(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x) const {
  auto p = p_pos(lower, upper, x);
  if (p.status == InfimumStatus::Unbounded) {
    throw SureLossError("positive-side functional is unbounded below: L_k is negative on some union",
                        min_l(lower, upper).support);
  }
  Rational gap = upper.at(x) - lower.at(x);
  return std::min(p.value, gap);
}

MinLResult FunctionalEngine::min_l(const GridFunction& lower, const GridFunction& upper) const {
  check_pair(lower, upper);
  LBuilder b = build_l_problem(basis_, lower, upper);
  Vector<Rational> norm = Vector<Rational>::Zero(b.problem.num_vars());
  for (int r = 0; r < b.box_count; ++r) norm(r) = 1;
  b.problem.add_row(norm, lp::Relation::Equal, Rational(1));
  auto sol = lp::solve_in_mode(b.problem, mode_);
  if (sol.status != lp::Status::Optimal) {
    throw internal_error(std::string("normalized L_k program reported ") + lp::to_string(sol.status));
  }
  MinLResult out;
  out.value = sol.value;
  out.support = union_from_weights(basis_.boxes, box_weights(sol, b.box_count), basis_.k);
  return out;
}

FunctionalValue p_neg(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k, lp::Mode mode) {
  return FunctionalEngine(lower.mesh, k, mode).p_neg(lower, upper, x);
}

FunctionalValue p_pos(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k, lp::Mode mode) {
  return FunctionalEngine(lower.mesh, k, mode).p_pos(lower, upper, x);
}

Rational gamma(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k, lp::Mode mode) {
  return FunctionalEngine(lower.mesh, k, mode).gamma(lower, upper, x);
}

Rational delta(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k, lp::Mode mode) {
  return FunctionalEngine(lower.mesh, k, mode).delta(lower, upper, x);
}

namespace {

template <typename Value>
struct BruteSearch {
  const BoxBasis& basis;
  const std::vector<Value>& lo;
  const std::vector<Value>& hi;
  std::vector<int> mx;  // multiplicity of each box at the query node
  int want;
  int max_boxes;

  std::vector<std::int64_t> mult;
  std::vector<char> seen;
  std::vector<int> chosen;
  bool found = false;
  Value best_l{};
  std::int64_t best_m = 1;
  std::vector<int> best;

  void evaluate(std::int64_t m_x) {
    Value l{};
    for (int idx : chosen) {
      for (const auto& [node, sign] : basis.vertices[idx]) {
        if (seen[node]) continue;
        seen[node] = 1;
        const std::int64_t m = mult[node];
        if (m > 0) {
          l += Value(m) * hi[node];
        } else if (m < 0) {
          l += Value(m) * lo[node];
        }
      }
    }
    for (int idx : chosen) {
      for (const auto& [node, sign] : basis.vertices[idx]) seen[node] = 0;
    }
    const std::int64_t am = m_x < 0 ? -m_x : m_x;
    // l / am < best_l / best_m
    if (!found || l * Value(best_m) < best_l * Value(am)) {
      found = true;
      best_l = l;
      best_m = am;
      best = chosen;
    }
  }

  void recurse(int start, std::int64_t m_x) {
    const int nb = static_cast<int>(basis.boxes.size());
    for (int i = start; i < nb; ++i) {
      chosen.push_back(i);
      for (const auto& [node, sign] : basis.vertices[i]) mult[node] += sign;
      const std::int64_t m_next = m_x + mx[i];
      if ((want < 0 && m_next < 0) || (want > 0 && m_next > 0)) evaluate(m_next);
      if (static_cast<int>(chosen.size()) < max_boxes) recurse(i, m_next);
      for (const auto& [node, sign] : basis.vertices[i]) mult[node] -= sign;
      chosen.pop_back();
    }
  }
};

template <typename Value>
FunctionalValue run_brute(const BoxBasis& basis, const std::vector<Value>& lo, const std::vector<Value>& hi,
                          std::size_t fx, int want, int max_boxes, std::size_t nodes, const Rational& scale) {
  BruteSearch<Value> search{basis, lo, hi, {}, want, max_boxes, {}, {}, {}, false, Value{}, 1, {}};
  search.mx.assign(basis.boxes.size(), 0);
  for (std::size_t r = 0; r < basis.boxes.size(); ++r) {
    for (const auto& [node, sign] : basis.vertices[r]) {
      if (node == fx) search.mx[r] = sign;
    }
  }
  search.mult.assign(nodes, 0);
  search.seen.assign(nodes, 0);
  search.recurse(0, 0);
  FunctionalValue out;
  if (!search.found) {
    out.status = InfimumStatus::Empty;
    out.value = 0;
    return out;
  }
  out.status = InfimumStatus::Finite;
  out.attained = true;
  out.value = Rational(search.best_l) / Rational(search.best_m) / scale;
  BoxUnion dub(basis.k);
  for (int idx : search.best) dub.add(basis.boxes[idx]);
  out.witness = std::move(dub);
  return out;
}

}  // namespace

FunctionalValue brute_force_infimum(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
                                    Side side, int max_boxes) {
  if (max_boxes < 1) throw invalid_parameter("max_boxes must be at least 1");
  require_ordered(lower, upper);
  require_order(lower.mesh, k);
  const std::size_t fx = lower.mesh.flat_index(x);
  BoxBasis basis = make_box_basis(lower.mesh, k, BoxFamily::All);
  const std::size_t nodes = lower.mesh.node_count();
  const int want = side == Side::Negative ? -1 : 1;

  // scaled 64-bit integers when the common denominator is small
  BigInt lcm = 1;
  for (std::size_t y = 0; y < nodes; ++y) {
    for (const Rational* v : {&lower[y], &upper[y]}) {
      BigInt d = denominator_of(*v);
      lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
  }
  if (lcm < BigInt(1) << 24) {
    std::vector<std::int64_t> lo(nodes), hi(nodes);
    for (std::size_t y = 0; y < nodes; ++y) {
      lo[y] = numerator_of(lower[y] * Rational(lcm)).convert_to<std::int64_t>();
      hi[y] = numerator_of(upper[y] * Rational(lcm)).convert_to<std::int64_t>();
    }
    return run_brute<std::int64_t>(basis, lo, hi, fx, want, max_boxes, nodes, Rational(lcm));
  }
  return run_brute<Rational>(basis, lower.values, upper.values, fx, want, max_boxes, nodes, Rational(1));
}

SumInequalityReport check_sum_inequality(const GridFunction& lower, const GridFunction& upper, int k, lp::Mode mode) {
  FunctionalEngine engine(lower.mesh, k, mode);
  const GridMesh& mesh = lower.mesh;
  for (std::size_t y = 0; y < mesh.node_count(); ++y) {
    if (mesh.is_cube_vertex(mesh.node_at(y)) && lower[y] != upper[y]) {
      throw precondition_error("bounds differ at a unit-cube vertex");
    }
  }
  if (auto mn = engine.min_l(lower, upper); mn.value < 0) {
    throw SureLossError("L_k is negative on some union (bounds incur sure loss)", mn.support);
  }
  SumInequalityReport report;
  for (std::size_t y = 0; y < mesh.node_count(); ++y) {
    SumInequalityRecord rec;
    rec.node = mesh.node_at(y);
    rec.neg = engine.p_neg(lower, upper, rec.node);
    rec.pos = engine.p_pos(lower, upper, rec.node);
    rec.gap = upper[y] - lower[y];
    rec.holds = rec.neg.value + rec.pos.value >= rec.gap;
    if (!rec.holds) report.violations.push_back(rec.node);
    report.records.push_back(std::move(rec));
  }
  return report;
}

std::vector<FunctionalRecord> functional_table(const GridFunction& lower, const GridFunction& upper, int k,
                                               lp::Mode mode, const std::vector<NodeIndex>& nodes) {
  FunctionalEngine engine(lower.mesh, k, mode);
  std::vector<NodeIndex> targets = nodes;
  if (targets.empty()) {
    for (std::size_t y = 0; y < lower.mesh.node_count(); ++y) targets.push_back(lower.mesh.node_at(y));
  }
  std::vector<FunctionalRecord> table;
  for (const auto& node : targets) {
    FunctionalRecord rec;
    rec.node = node;
    rec.neg = engine.p_neg(lower, upper, node);
    rec.pos = engine.p_pos(lower, upper, node);
    Rational gap = upper.at(node) - lower.at(node);
    if (rec.neg.status != InfimumStatus::Unbounded) rec.gamma = std::min(rec.neg.value, gap);
    if (rec.pos.status != InfimumStatus::Unbounded) rec.delta = std::min(rec.pos.value, gap);
    table.push_back(std::move(rec));
  }
  return table;
}

}  // namespace kboxkit
