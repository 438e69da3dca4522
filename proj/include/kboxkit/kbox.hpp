#ifndef KBOXKIT_KBOX_HPP
#define KBOXKIT_KBOX_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "kboxkit/mesh.hpp"

namespace kboxkit {

/// A k-box [lower, upper] stored by mesh axis indices. A coordinate varies
/// exactly when lower[i] < upper[i]; k is the number of varying coordinates.
struct KBox {
  NodeIndex lower;
  NodeIndex upper;

  KBox() = default;
  KBox(NodeIndex lower, NodeIndex upper);

  int dim() const { return static_cast<int>(lower.size()); }
  int order() const;
  std::vector<int> varying() const;

  bool has_vertex(const NodeIndex& point) const;
  /// All 2^k vertices; the j-th bit of the enumeration counter picks the
  /// upper end of the j-th varying coordinate.
  std::vector<NodeIndex> vertices() const;

  /// Canonical order: varying set, then lower corner, then upper corner.
  friend bool operator<(const KBox& a, const KBox& b);
  friend bool operator==(const KBox& a, const KBox& b) {
    return a.lower == b.lower && a.upper == b.upper;
  }
};

/// sign_R(v) = (-1)^(m - (n - k)) where m counts coordinates with v_i = lower_i.
int vertex_sign(const KBox& box, const NodeIndex& vertex);

/// m_R(u): the vertex sign, or 0 when u is not a vertex.
int box_multiplicity(const KBox& box, const NodeIndex& point);

/// Formal disjoint union: a multiset of k-boxes of a common order.
class BoxUnion {
 public:
  explicit BoxUnion(int k) : k_(k) {}

  int order() const { return k_; }
  bool empty() const { return counts_.empty(); }
  std::int64_t total_count() const;
  const std::map<KBox, std::int64_t>& boxes() const { return counts_; }

  void add(const KBox& box, std::int64_t count = 1);
  /// Multiset sum.
  void merge(const BoxUnion& other, std::int64_t times = 1);

  friend bool operator==(const BoxUnion& a, const BoxUnion& b) {
    return a.k_ == b.k_ && a.counts_ == b.counts_;
  }

 private:
  int k_;
  std::map<KBox, std::int64_t> counts_;
};

std::int64_t multiplicity(const BoxUnion& dub, const NodeIndex& point);

/// Nonzero multiplicities keyed by node.
std::map<NodeIndex, std::int64_t> multiplicity_map(const BoxUnion& dub);

/// Signed vertex sum V_{f,k}(R).
Rational box_volume(const GridFunction& f, const KBox& box);

/// L_k^{(A,B)}: B at positive-multiplicity vertices, A at negative ones.
Rational l_value(const GridFunction& lower, const GridFunction& upper, const BoxUnion& dub);

/// Union with multiplicity exactly z at `point`, built from |z| copies of one
/// of two boxes that share `point` and differ only along the first interior
/// coordinate of the point.
BoxUnion union_with_multiplicity(const NodeIndex& point, std::int64_t z, int k, const GridMesh& mesh);

/// Visits every k-box with vertices on the mesh exactly once in canonical order.
void for_each_kbox(const GridMesh& mesh, int k, const std::function<void(const KBox&)>& visit);
std::vector<KBox> enumerate_kboxes(const GridMesh& mesh, int k);

/// Closed-form count: sum over k-subsets S of prod_{i in S} C(g_i, 2) prod_{i not in S} g_i.
std::uint64_t kbox_count(const GridMesh& mesh, int k);

/// k-boxes spanning one mesh cell along each varying axis. Every mesh k-box
/// is a disjoint union of these with the same multiplicities, so they
/// generate the same cone of multiplicity vectors.
std::vector<KBox> elementary_kboxes(const GridMesh& mesh, int k);

/// A box list with vertices resolved to flat node indices and signs, shared by
/// the LP builders.
struct BoxBasis {
  int k = 0;
  std::vector<KBox> boxes;
  std::vector<std::vector<std::pair<std::size_t, int>>> vertices;
};

enum class BoxFamily { Elementary, All };

BoxBasis make_box_basis(const GridMesh& mesh, int k, BoxFamily family = BoxFamily::Elementary);

void require_order(const GridMesh& mesh, int k);

}  // namespace kboxkit

#endif  // KBOXKIT_KBOX_HPP
