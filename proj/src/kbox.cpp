#include "kboxkit/kbox.hpp"

#include <algorithm>
#include <cstdlib>

#include "kboxkit/error.hpp"

namespace kboxkit {

KBox::KBox(NodeIndex lo, NodeIndex hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size() || lower.empty()) throw invalid_parameter("box corners differ in dimension");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) throw invalid_parameter("box lower corner exceeds upper corner");
  }
  if (order() == 0) throw invalid_parameter("a k-box needs at least one varying coordinate");
}

int KBox::order() const {
  int k = 0;
  for (std::size_t i = 0; i < lower.size(); ++i) k += lower[i] < upper[i];
  return k;
}

std::vector<int> KBox::varying() const {
  std::vector<int> v;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] < upper[i]) v.push_back(static_cast<int>(i));
  }
  return v;
}

bool KBox::has_vertex(const NodeIndex& point) const {
  if (point.size() != lower.size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (point[i] != lower[i] && point[i] != upper[i]) return false;
  }
  return true;
}

std::vector<NodeIndex> KBox::vertices() const {
  auto var = varying();
  std::vector<NodeIndex> out;
  out.reserve(std::size_t{1} << var.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << var.size()); ++mask) {
    NodeIndex v = lower;
    for (std::size_t j = 0; j < var.size(); ++j) {
      if (mask & (std::size_t{1} << j)) v[var[j]] = upper[var[j]];
    }
    out.push_back(std::move(v));
  }
  return out;
}

bool operator<(const KBox& a, const KBox& b) {
  auto va = a.varying();
  auto vb = b.varying();
  if (va != vb) return va < vb;
  if (a.lower != b.lower) return a.lower < b.lower;
  return a.upper < b.upper;
}

int vertex_sign(const KBox& box, const NodeIndex& vertex) {
  if (!box.has_vertex(vertex)) throw domain_error("point is not a vertex of the box");
  // m - (n - k) equals the number of varying coordinates sitting at the lower end
  int at_lower = 0;
  for (std::size_t i = 0; i < vertex.size(); ++i) {
    if (box.lower[i] < box.upper[i] && vertex[i] == box.lower[i]) ++at_lower;
  }
  return at_lower % 2 == 0 ? 1 : -1;
}

int box_multiplicity(const KBox& box, const NodeIndex& point) {
  return box.has_vertex(point) ? vertex_sign(box, point) : 0;
}

std::int64_t BoxUnion::total_count() const {
  std::int64_t total = 0;
  for (const auto& [box, count] : counts_) total += count;
  return total;
}

void BoxUnion::add(const KBox& box, std::int64_t count) {
  if (count < 1) throw invalid_parameter("box counts must be positive");
  if (box.order() != k_) throw invalid_parameter("box order does not match the union order");
  counts_[box] += count;
}

void BoxUnion::merge(const BoxUnion& other, std::int64_t times) {
  if (other.k_ != k_) throw invalid_parameter("cannot merge unions of different order");
  for (const auto& [box, count] : other.counts_) add(box, count * times);
}

std::int64_t multiplicity(const BoxUnion& dub, const NodeIndex& point) {
  std::int64_t m = 0;
  for (const auto& [box, count] : dub.boxes()) m += count * box_multiplicity(box, point);
  return m;
}

std::map<NodeIndex, std::int64_t> multiplicity_map(const BoxUnion& dub) {
  std::map<NodeIndex, std::int64_t> m;
  for (const auto& [box, count] : dub.boxes()) {
    for (const auto& v : box.vertices()) m[v] += count * vertex_sign(box, v);
  }
  std::erase_if(m, [](const auto& entry) { return entry.second == 0; });
  return m;
}

Rational box_volume(const GridFunction& f, const KBox& box) {
  if (!f.mesh.contains(box.lower) || !f.mesh.contains(box.upper)) {
    throw domain_error("box vertices are not on the function's mesh");
  }
  Rational volume = 0;
  for (const auto& v : box.vertices()) {
    if (vertex_sign(box, v) > 0) {
      volume += f.at(v);
    } else {
      volume -= f.at(v);
    }
  }
  return volume;
}

Rational l_value(const GridFunction& lower, const GridFunction& upper, const BoxUnion& dub) {
  require_ordered(lower, upper);
  Rational total = 0;
  for (const auto& [node, m] : multiplicity_map(dub)) {
    if (!lower.mesh.contains(node)) throw domain_error("union vertex is not on the mesh");
    const Rational& value = m > 0 ? upper.at(node) : lower.at(node);
    total += Rational(m) * value;
  }
  return total;
}

void require_order(const GridMesh& mesh, int k) {
  if (k < 1 || k > mesh.dim()) {
    throw invalid_parameter("order k=" + std::to_string(k) + " must lie in [1, " + std::to_string(mesh.dim()) + "]");
  }
}

BoxUnion union_with_multiplicity(const NodeIndex& point, std::int64_t z, int k, const GridMesh& mesh) {
  require_order(mesh, k);
  if (!mesh.contains(point)) throw domain_error("point is not on the mesh");
  BoxUnion dub(k);
  if (z == 0) return dub;
  if (mesh.is_cube_vertex(point)) throw domain_error("a unit-cube vertex admits no union with nonzero multiplicity of both signs");
  const int n = mesh.dim();
  int lead = -1;
  for (int i = 0; i < n; ++i) {
    if (point[i] != 0 && point[i] != mesh.axis_size(i) - 1) {
      lead = i;
      break;
    }
  }
  // the lead coordinate plays the role of the first coordinate; the next k-1
  // coordinates in index order are the other varying ones
  std::vector<int> others;
  for (int i = 0; i < n && static_cast<int>(others.size()) < k - 1; ++i) {
    if (i != lead) others.push_back(i);
  }
  NodeIndex lo1 = point, hi1 = point, lo2 = point, hi2 = point;
  lo1[lead] = 0;
  hi1[lead] = point[lead];
  lo2[lead] = point[lead];
  hi2[lead] = mesh.axis_size(lead) - 1;
  for (int j : others) {
    int a = point[j] == 0 ? mesh.axis_size(j) - 1 : point[j];
    lo1[j] = lo2[j] = 0;
    hi1[j] = hi2[j] = a;
  }
  KBox first(lo1, hi1);
  KBox second(lo2, hi2);
  int m_first = vertex_sign(first, point);
  dub.add(z * m_first > 0 ? first : second, std::llabs(z));
  return dub;
}

namespace {

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> subset(k);
  for (int i = 0; i < k; ++i) subset[i] = i;
  while (true) {
    visit(subset);
    int i = k - 1;
    while (i >= 0 && subset[i] == n - k + i) --i;
    if (i < 0) return;
    ++subset[i];
    for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

// Visits boxes for one varying set with lower corner in lexicographic order,
// then upper corner in lexicographic order.
void for_each_box_with_varying(const GridMesh& mesh, const std::vector<int>& varying, bool elementary,
                               const std::function<void(const KBox&)>& visit) {
  const int n = mesh.dim();
  std::vector<bool> is_varying(n, false);
  for (int i : varying) is_varying[i] = true;
  NodeIndex lower(n, 0);
  // lower corner ranges: varying axes exclude the last point
  auto lower_limit = [&](int i) { return is_varying[i] ? mesh.axis_size(i) - 1 : mesh.axis_size(i); };
  while (true) {
    NodeIndex upper = lower;
    for (int i : varying) upper[i] = lower[i] + 1;
    while (true) {
      visit(KBox(lower, upper));
      if (elementary) break;
      int j = static_cast<int>(varying.size()) - 1;
      while (j >= 0 && upper[varying[j]] == mesh.axis_size(varying[j]) - 1) {
        upper[varying[j]] = lower[varying[j]] + 1;
        --j;
      }
      if (j < 0) break;
      ++upper[varying[j]];
    }
    int i = n - 1;
    while (i >= 0 && lower[i] == lower_limit(i) - 1) {
      lower[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++lower[i];
  }
}

}  // namespace

void for_each_kbox(const GridMesh& mesh, int k, const std::function<void(const KBox&)>& visit) {
  require_order(mesh, k);
  for_each_subset(mesh.dim(), k, [&](const std::vector<int>& varying) {
    for_each_box_with_varying(mesh, varying, false, visit);
  });
}

std::vector<KBox> enumerate_kboxes(const GridMesh& mesh, int k) {
  std::vector<KBox> boxes;
  for_each_kbox(mesh, k, [&](const KBox& box) { boxes.push_back(box); });
  return boxes;
}

std::uint64_t kbox_count(const GridMesh& mesh, int k) {
  require_order(mesh, k);
  std::uint64_t total = 0;
  for_each_subset(mesh.dim(), k, [&](const std::vector<int>& varying) {
    std::uint64_t term = 1;
    std::vector<bool> is_varying(mesh.dim(), false);
    for (int i : varying) is_varying[i] = true;
    for (int i = 0; i < mesh.dim(); ++i) {
      std::uint64_t g = static_cast<std::uint64_t>(mesh.axis_size(i));
      term *= is_varying[i] ? g * (g - 1) / 2 : g;
    }
    total += term;
  });
  return total;
}

std::vector<KBox> elementary_kboxes(const GridMesh& mesh, int k) {
  require_order(mesh, k);
  std::vector<KBox> boxes;
  for_each_subset(mesh.dim(), k, [&](const std::vector<int>& varying) {
    for_each_box_with_varying(mesh, varying, true, [&](const KBox& box) { boxes.push_back(box); });
  });
  return boxes;
}

BoxBasis make_box_basis(const GridMesh& mesh, int k, BoxFamily family) {
  BoxBasis basis;
  basis.k = k;
  basis.boxes = family == BoxFamily::Elementary ? elementary_kboxes(mesh, k) : enumerate_kboxes(mesh, k);
  basis.vertices.reserve(basis.boxes.size());
  for (const auto& box : basis.boxes) {
    std::vector<std::pair<std::size_t, int>> verts;
    for (const auto& v : box.vertices()) verts.emplace_back(mesh.flat_index(v), vertex_sign(box, v));
    basis.vertices.push_back(std::move(verts));
  }
  return basis;
}

}  // namespace kboxkit
