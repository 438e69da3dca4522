#include "kboxkit/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "kboxkit/error.hpp"

namespace kboxkit {

GridMesh::GridMesh(std::vector<std::vector<Rational>> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw invalid_parameter("mesh needs at least one axis");
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    const auto& a = axes_[i];
    if (a.size() < 2) throw invalid_parameter("axis " + std::to_string(i) + " has fewer than 2 points");
    if (a.front() != 0 || a.back() != 1) {
      throw invalid_parameter("axis " + std::to_string(i) + " must start at 0 and end at 1");
    }
    for (std::size_t j = 1; j < a.size(); ++j) {
      if (!(a[j - 1] < a[j])) {
        throw invalid_parameter("axis " + std::to_string(i) + " is not strictly increasing");
      }
    }
  }
  strides_.assign(axes_.size(), 1);
  node_count_ = 1;
  for (std::size_t i = axes_.size(); i-- > 0;) {
    strides_[i] = node_count_;
    node_count_ *= axes_[i].size();
  }
}

std::size_t GridMesh::flat_index(const NodeIndex& node) const {
  if (!contains(node)) throw domain_error("node is not on the mesh");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) flat += strides_[i] * static_cast<std::size_t>(node[i]);
  return flat;
}

NodeIndex GridMesh::node_at(std::size_t flat) const {
  if (flat >= node_count_) throw domain_error("flat node index out of range");
  NodeIndex node(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    node[i] = static_cast<int>(flat / strides_[i]);
    flat %= strides_[i];
  }
  return node;
}

std::vector<Rational> GridMesh::coordinates(const NodeIndex& node) const {
  if (!contains(node)) throw domain_error("node is not on the mesh");
  std::vector<Rational> x(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) x[i] = axes_[i][node[i]];
  return x;
}

bool GridMesh::contains(const NodeIndex& node) const {
  if (node.size() != axes_.size()) return false;
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (node[i] < 0 || node[i] >= static_cast<int>(axes_[i].size())) return false;
  }
  return true;
}

bool GridMesh::is_cube_vertex(const NodeIndex& node) const {
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (node[i] != 0 && node[i] != axis_size(static_cast<int>(i)) - 1) return false;
  }
  return true;
}

bool GridMesh::touches_zero_face(const NodeIndex& node) const {
  return std::find(node.begin(), node.end(), 0) != node.end();
}

NodeIndex GridMesh::one_node() const {
  NodeIndex node(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) node[i] = static_cast<int>(axes_[i].size()) - 1;
  return node;
}

std::optional<int> GridMesh::find_on_axis(int axis, const Rational& value) const {
  const auto& a = axes_[axis];
  auto it = std::lower_bound(a.begin(), a.end(), value);
  if (it == a.end() || *it != value) return std::nullopt;
  return static_cast<int>(it - a.begin());
}

GridMesh make_uniform_mesh(int dim, int points_per_axis) {
  if (dim < 1) throw invalid_parameter("dimension must be at least 1");
  if (points_per_axis < 2) throw invalid_parameter("uniform mesh needs at least 2 points per axis");
  std::vector<Rational> axis(points_per_axis);
  for (int j = 0; j < points_per_axis; ++j) axis[j] = Rational(j) / Rational(points_per_axis - 1);
  return GridMesh(std::vector<std::vector<Rational>>(dim, axis));
}

GridFunction::GridFunction(GridMesh m, std::vector<Rational> v, std::optional<std::string> l)
    : mesh(std::move(m)), values(std::move(v)), label(std::move(l)) {
  if (values.size() != mesh.node_count()) {
    throw invalid_parameter("grid function has " + std::to_string(values.size()) +
                            " values but the mesh has " + std::to_string(mesh.node_count()) + " nodes");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0 || values[i] > 1) {
      throw invalid_parameter("grid function value " + format_rational(values[i]) + " at node " +
                              std::to_string(i) + " is outside [0,1]");
    }
  }
}

void require_same_mesh(const GridFunction& a, const GridFunction& b) {
  if (!(a.mesh == b.mesh)) throw invalid_parameter("grid functions live on different meshes");
}

void require_ordered(const GridFunction& lower, const GridFunction& upper) {
  require_same_mesh(lower, upper);
  for (std::size_t i = 0; i < lower.values.size(); ++i) {
    if (lower[i] > upper[i]) {
      auto node = lower.mesh.node_at(i);
      std::string where;
      for (std::size_t j = 0; j < node.size(); ++j) where += (j ? "," : "") + std::to_string(node[j]);
      throw precondition_error("lower bound exceeds upper bound at node (" + where + ")");
    }
  }
}

Family parse_family(const std::string& text) {
  if (text == "product") return {FamilyKind::Product, 0.0};
  if (text == "min") return {FamilyKind::Min, 0.0};
  if (text == "lukasiewicz") return {FamilyKind::Lukasiewicz, 0.0};
  if (text == "drastic") return {FamilyKind::Drastic, 0.0};
  static const std::regex frank(R"(frank[(:]([-+0-9.eE]+)\)?)");
  std::smatch m;
  if (std::regex_match(text, m, frank)) {
    double theta = 0.0;
    try {
      theta = std::stod(m[1].str());
    } catch (const std::exception&) {
      throw invalid_parameter("malformed Frank parameter in '" + text + "'");
    }
    if (theta == 0.0 || !std::isfinite(theta)) throw invalid_parameter("Frank parameter must be finite and nonzero");
    return {FamilyKind::Frank, theta};
  }
  throw invalid_parameter("unknown family '" + text + "'");
}

std::string family_name(const Family& family) {
  switch (family.kind) {
    case FamilyKind::Product: return "product";
    case FamilyKind::Min: return "min";
    case FamilyKind::Lukasiewicz: return "lukasiewicz";
    case FamilyKind::Drastic: return "drastic";
    case FamilyKind::Frank: {
      std::string t = std::to_string(family.theta);
      t.erase(t.find_last_not_of('0') + 1);
      if (t.back() == '.') t.pop_back();
      return "frank(" + t + ")";
    }
  }
  return "unknown";
}

bool family_is_exact(const Family& family) { return family.kind != FamilyKind::Frank; }

namespace {

Rational frank_value(double theta, const std::vector<Rational>& point) {
  const int n = static_cast<int>(point.size());
  int not_one = -1;
  int count_not_one = 0;
  for (int i = 0; i < n; ++i) {
    if (point[i] == 0) return Rational(0);
    if (point[i] != 1) {
      not_one = i;
      ++count_not_one;
    }
  }
  if (count_not_one == 0) return Rational(1);
  if (count_not_one == 1) return point[not_one];
  // -(1/theta) log(1 + prod(e^{-theta u_i} - 1) / (e^{-theta} - 1)^{n-1})
  long double denom = std::expm1(-static_cast<long double>(theta));
  long double ratio = 1.0L;
  for (int i = 0; i < n; ++i) {
    long double u = static_cast<long double>(to_double(point[i]));
    ratio *= std::expm1(-static_cast<long double>(theta) * u);
    if (i > 0) ratio /= denom;
  }
  long double value = -std::log1p(ratio) / static_cast<long double>(theta);
  value = std::clamp(value, 0.0L, 1.0L);
  constexpr long double scale = 1073741824.0L;  // 2^30
  auto scaled = static_cast<long long>(std::llround(value * scale));
  return Rational(scaled) / Rational(1073741824LL);
}

}  // namespace

Rational evaluate_family(const Family& family, const std::vector<Rational>& point) {
  if (point.empty()) throw invalid_parameter("family evaluation needs a nonempty point");
  switch (family.kind) {
    case FamilyKind::Product: {
      Rational p = 1;
      for (const auto& x : point) p *= x;
      return p;
    }
    case FamilyKind::Min:
      return *std::min_element(point.begin(), point.end());
    case FamilyKind::Lukasiewicz: {
      Rational s = 0;
      for (const auto& x : point) s += x;
      s -= Rational(static_cast<long>(point.size()) - 1);
      return s > 0 ? s : Rational(0);
    }
    case FamilyKind::Drastic: {
      // nonzero only on the marginals, where all but one coordinate equal 1
      const auto ones = std::count(point.begin(), point.end(), Rational(1));
      if (ones + 1 < static_cast<long>(point.size())) return Rational(0);
      return *std::min_element(point.begin(), point.end());
    }
    case FamilyKind::Frank:
      return frank_value(family.theta, point);
  }
  throw invalid_parameter("unknown family");
}

GridFunction sample_family(const Family& family, const GridMesh& mesh) {
  std::vector<Rational> values(mesh.node_count());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = evaluate_family(family, mesh.coordinates(mesh.node_at(i)));
  }
  return GridFunction(mesh, std::move(values), family_name(family));
}

StructuralReport structural_check(const GridFunction& f) {
  const GridMesh& mesh = f.mesh;
  StructuralReport report;
  report.value_at_one = f.at(mesh.one_node());
  StructuralWitness grounded{"grounded", {}};
  StructuralWitness monotone{"one_increasing", {}};
  StructuralWitness marginals{"uniform_marginals", {}};
  const int n = mesh.dim();
  for (std::size_t flat = 0; flat < mesh.node_count(); ++flat) {
    NodeIndex node = mesh.node_at(flat);
    if (mesh.touches_zero_face(node) && f[flat] != 0) {
      report.grounded = false;
      grounded.nodes.push_back(node);
    }
    for (int axis = 0; axis < n; ++axis) {
      if (node[axis] + 1 < mesh.axis_size(axis)) {
        NodeIndex next = node;
        ++next[axis];
        if (f.at(next) < f[flat]) {
          report.one_increasing = false;
          monotone.nodes.push_back(node);
          monotone.nodes.push_back(next);
        }
      }
    }
    int free_axis = -1;
    int free_count = 0;
    for (int axis = 0; axis < n; ++axis) {
      if (node[axis] != mesh.axis_size(axis) - 1) {
        free_axis = axis;
        ++free_count;
      }
    }
    if (free_count <= 1) {
      Rational expected = free_count == 0 ? Rational(1) : mesh.axis(free_axis)[node[free_axis]];
      if (f[flat] != expected) {
        report.uniform_marginals = false;
        marginals.nodes.push_back(node);
      }
    }
  }
  for (auto* w : {&grounded, &monotone, &marginals}) {
    if (!w->nodes.empty()) report.witnesses.push_back(std::move(*w));
  }
  return report;
}

std::vector<Rational> max_below(const GridMesh& mesh, std::vector<Rational> values) {
  if (values.size() != mesh.node_count()) throw invalid_parameter("value count does not match mesh");
  for (int axis = 0; axis < mesh.dim(); ++axis) {
    const std::size_t step = mesh.stride(axis);
    const std::size_t span = step * static_cast<std::size_t>(mesh.axis_size(axis));
    for (std::size_t y = 0; y < values.size(); ++y) {
      if (y % span >= step && values[y - step] > values[y]) values[y] = values[y - step];
    }
  }
  return values;
}

std::vector<Rational> min_above(const GridMesh& mesh, std::vector<Rational> values) {
  if (values.size() != mesh.node_count()) throw invalid_parameter("value count does not match mesh");
  for (int axis = 0; axis < mesh.dim(); ++axis) {
    const std::size_t step = mesh.stride(axis);
    const std::size_t span = step * static_cast<std::size_t>(mesh.axis_size(axis));
    for (std::size_t y = values.size(); y-- > 0;) {
      if (y % span < span - step && values[y + step] < values[y]) values[y] = values[y + step];
    }
  }
  return values;
}

}  // namespace kboxkit
