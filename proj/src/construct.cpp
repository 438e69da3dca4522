#include "kboxkit/construct.hpp"

#include <set>

#include "kboxkit/error.hpp"

namespace kboxkit {

const char* to_string(Direction direction) { return direction == Direction::Below ? "below" : "above"; }

Direction parse_direction(const std::string& text) {
  if (text == "below") return Direction::Below;
  if (text == "above") return Direction::Above;
  throw invalid_parameter("direction must be 'below' or 'above', got '" + text + "'");
}

namespace {

Rational checked_increment(const FunctionalEngine& engine, const GridFunction& lower, const GridFunction& upper,
                           const NodeIndex& x, Direction direction) {
  Rational change = direction == Direction::Below ? engine.gamma(lower, upper, x) : engine.delta(lower, upper, x);
  if (change < 0) {
    // under L_k >= 0 both functionals are nonnegative
    throw SureLossError("negative step at a node: L_k is negative on some union", engine.min_l(lower, upper).support);
  }
  return change;
}

}  // namespace

GridFunction raise_step(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
                        lp::Mode mode) {
  FunctionalEngine engine(lower.mesh, k, mode);
  GridFunction out = lower;
  out.at(x) += checked_increment(engine, lower, upper, x, Direction::Below);
  return out;
}

GridFunction lower_step(const GridFunction& lower, const GridFunction& upper, const NodeIndex& x, int k,
                        lp::Mode mode) {
  FunctionalEngine engine(lower.mesh, k, mode);
  GridFunction out = upper;
  out.at(x) -= checked_increment(engine, lower, upper, x, Direction::Above);
  return out;
}

std::vector<NodeIndex> lexicographic_order(const GridMesh& mesh) {
  std::vector<NodeIndex> order;
  order.reserve(mesh.node_count());
  for (std::size_t i = 0; i < mesh.node_count(); ++i) order.push_back(mesh.node_at(i));
  return order;
}

SweepTrace sweep(const GridFunction& lower, const GridFunction& upper, int k, Direction direction,
                 const std::optional<std::vector<NodeIndex>>& order, lp::Mode mode) {
  require_ordered(lower, upper);
  FunctionalEngine engine(lower.mesh, k, mode);
  const GridMesh& mesh = lower.mesh;
  std::vector<NodeIndex> nodes = order ? *order : lexicographic_order(mesh);
  if (order) {
    std::set<NodeIndex> distinct(nodes.begin(), nodes.end());
    if (nodes.size() != mesh.node_count() || distinct.size() != nodes.size() ||
        !std::all_of(nodes.begin(), nodes.end(), [&](const NodeIndex& v) { return mesh.contains(v); })) {
      throw invalid_parameter("sweep order must list every mesh node exactly once");
    }
  }
  if (auto mn = engine.min_l(lower, upper); mn.value < 0) {
    throw SureLossError("bounds incur sure loss (L_k < 0 on some union); run check-asl for the full verdict",
                        mn.support);
  }

  SweepTrace trace{direction, k, nodes, {}, direction == Direction::Below ? lower : upper};
  GridFunction& current = trace.result;
  for (const auto& x : nodes) {
    const std::size_t fx = mesh.flat_index(x);
    SweepStep step{x, current[fx], Rational(0)};
    // with L_k >= 0 the step lies in [0, B - A], so coinciding bounds need no program
    bool pinned = direction == Direction::Below ? current[fx] == upper[fx] : lower[fx] == current[fx];
    if (!pinned) {
      if (direction == Direction::Below) {
        step.change = checked_increment(engine, current, upper, x, direction);
        current[fx] += step.change;
      } else {
        step.change = checked_increment(engine, lower, current, x, direction);
        current[fx] -= step.change;
      }
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

KIncreasingReport check_k_increasing(const GridFunction& f, int k) {
  KIncreasingReport report;
  bool stop = false;
  for_each_kbox(f.mesh, k, [&](const KBox& box) {
    if (stop) return;
    ++report.boxes_checked;
    Rational v = box_volume(f, box);
    if (v < 0) {
      report.passed = false;
      report.violating_box = box;
      report.volume = v;
      stop = true;
    }
  });
  return report;
}

}  // namespace kboxkit
