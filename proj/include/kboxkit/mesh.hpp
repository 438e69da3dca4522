#ifndef KBOXKIT_MESH_HPP
#define KBOXKIT_MESH_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kboxkit/rational.hpp"

namespace kboxkit {

/// A mesh node addressed by its per-axis index.
using NodeIndex = std::vector<int>;

/// Finite rectangular mesh in the unit n-cube. Every axis is a strictly
/// increasing list of rationals that starts at 0 and ends at 1.
///
/// Nodes are enumerated row-major with axis 0 slowest; this is the canonical
/// order used by every sweep and report.
class GridMesh {
 public:
  explicit GridMesh(std::vector<std::vector<Rational>> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  int axis_size(int axis) const { return static_cast<int>(axes_[axis].size()); }
  const std::vector<Rational>& axis(int axis) const { return axes_[axis]; }
  const std::vector<std::vector<Rational>>& axes() const { return axes_; }

  std::size_t node_count() const { return node_count_; }
  std::size_t stride(int axis) const { return strides_[axis]; }

  std::size_t flat_index(const NodeIndex& node) const;
  NodeIndex node_at(std::size_t flat) const;
  std::vector<Rational> coordinates(const NodeIndex& node) const;

  bool contains(const NodeIndex& node) const;

  /// True when every coordinate of the node is 0 or 1.
  bool is_cube_vertex(const NodeIndex& node) const;
  /// True when some coordinate of the node is 0.
  bool touches_zero_face(const NodeIndex& node) const;

  NodeIndex zero_node() const { return NodeIndex(axes_.size(), 0); }
  NodeIndex one_node() const;

  /// Index of the coordinate `value` on `axis`, if it is a grid value.
  std::optional<int> find_on_axis(int axis, const Rational& value) const;

  friend bool operator==(const GridMesh& a, const GridMesh& b) { return a.axes_ == b.axes_; }

 private:
  std::vector<std::vector<Rational>> axes_;
  std::vector<std::size_t> strides_;
  std::size_t node_count_ = 0;
};

/// Uniform mesh with `points_per_axis` points {0, 1/(g-1), ..., 1} on each of `dim` axes.
GridMesh make_uniform_mesh(int dim, int points_per_axis);

/// Values of a function at every mesh node, row-major.
struct GridFunction {
  GridMesh mesh;
  std::vector<Rational> values;
  std::optional<std::string> label;

  GridFunction(GridMesh mesh, std::vector<Rational> values,
               std::optional<std::string> label = std::nullopt);

  const Rational& operator[](std::size_t flat) const { return values[flat]; }
  Rational& operator[](std::size_t flat) { return values[flat]; }
  const Rational& at(const NodeIndex& node) const { return values[mesh.flat_index(node)]; }
  Rational& at(const NodeIndex& node) { return values[mesh.flat_index(node)]; }

  friend bool operator==(const GridFunction& a, const GridFunction& b) {
    return a.mesh == b.mesh && a.values == b.values;
  }
};

/// Throws invalid-parameter unless both functions live on the same mesh.
void require_same_mesh(const GridFunction& a, const GridFunction& b);

/// Throws precondition-error naming the first node where a > b.
void require_ordered(const GridFunction& lower, const GridFunction& upper);

enum class FamilyKind { Product, Min, Lukasiewicz, Frank, Drastic };

/// One of the built-in analytic test families. `theta` is used by Frank only.
struct Family {
  FamilyKind kind = FamilyKind::Product;
  double theta = 0.0;
};

/// Accepts "product", "min", "lukasiewicz", "drastic", "frank(theta)" and "frank:theta".
Family parse_family(const std::string& text);
std::string family_name(const Family& family);

/// Exact value of the family at a rational point. Frank is transcendental;
/// its value is rounded to a multiple of 2^-30 except on the boundary where
/// it is exact (0 on the zero faces, u_i on the marginals).
Rational evaluate_family(const Family& family, const std::vector<Rational>& point);

/// True when `evaluate_family` is exact for this family.
bool family_is_exact(const Family& family);

GridFunction sample_family(const Family& family, const GridMesh& mesh);

struct StructuralWitness {
  std::string property;   // "grounded", "one_increasing", "uniform_marginals"
  std::vector<NodeIndex> nodes;
};

struct StructuralReport {
  bool grounded = true;
  bool one_increasing = true;
  bool uniform_marginals = true;
  Rational value_at_one;
  std::vector<StructuralWitness> witnesses;

  bool standardized() const { return grounded && one_increasing && value_at_one == 1; }
  bool semicopula() const { return grounded && one_increasing && uniform_marginals; }
};

StructuralReport structural_check(const GridFunction& f);

/// At each node, the maximum of `values` over the nodes componentwise below it.
std::vector<Rational> max_below(const GridMesh& mesh, std::vector<Rational> values);
/// At each node, the minimum of `values` over the nodes componentwise above it.
std::vector<Rational> min_above(const GridMesh& mesh, std::vector<Rational> values);

}  // namespace kboxkit

#endif  // KBOXKIT_MESH_HPP
