#include "kboxkit/random_instances.hpp"

#include "kboxkit/error.hpp"

namespace kboxkit {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw invalid_parameter("empty integer range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  return lo + static_cast<std::int64_t>(next() % span);
}

Rational Rng::unit_rational(std::int64_t max_denominator) {
  const std::int64_t q = uniform(1, max_denominator);
  const std::int64_t p = uniform(0, q);
  return Rational(p) / q;
}

const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::Distribution: return "distribution";
    case InstanceKind::Mixture: return "mixture";
    case InstanceKind::Tight: return "tight";
  }
  return "unknown";
}

GridFunction random_distribution(Rng& rng, const GridMesh& mesh) {
  const std::size_t nodes = mesh.node_count();
  // weight of the cell whose upper corner is the node; zero-face nodes carry none
  std::vector<Rational> mass(nodes, Rational(0));
  std::int64_t total = 0;
  const bool sparse = rng.chance(1, 3);
  for (std::size_t y = 0; y < nodes; ++y) {
    if (mesh.touches_zero_face(mesh.node_at(y))) continue;
    std::int64_t w = sparse ? (rng.chance(1, 3) ? rng.uniform(1, 3) : 0) : rng.uniform(0, 4);
    mass[y] = w;
    total += w;
  }
  if (total == 0) {
    mass[nodes - 1] = 1;
    total = 1;
  }
  // cumulative sums along each axis turn cell masses into the distribution function
  for (int axis = 0; axis < mesh.dim(); ++axis) {
    const std::size_t step = mesh.stride(axis);
    const std::size_t span = step * static_cast<std::size_t>(mesh.axis_size(axis));
    for (std::size_t y = 0; y < nodes; ++y) {
      if (y % span >= step) mass[y] += mass[y - step];
    }
  }
  for (auto& v : mass) v /= total;
  return GridFunction(mesh, std::move(mass), std::string("distribution"));
}

GridFunction random_monotone(Rng& rng, const GridMesh& mesh, int denominator) {
  const std::size_t nodes = mesh.node_count();
  std::vector<Rational> values(nodes, Rational(0));
  for (std::size_t y = 0; y < nodes; ++y) {
    if (!mesh.touches_zero_face(mesh.node_at(y))) values[y] = Rational(rng.uniform(0, denominator)) / denominator;
  }
  values[nodes - 1] = 1;
  return GridFunction(mesh, max_below(mesh, std::move(values)), std::string("monotone"));
}

BoundPair random_standardized_pair(Rng& rng, const GridMesh& mesh) {
  const std::int64_t roll = rng.uniform(0, 9);
  const InstanceKind kind = roll < 4 ? InstanceKind::Distribution
                            : roll < 8 ? InstanceKind::Mixture
                                       : InstanceKind::Tight;
  static constexpr int kDenominators[] = {4, 6, 8, 12};
  const int q = kDenominators[rng.uniform(0, 3)];
  GridFunction centre = random_distribution(rng, mesh);
  if (kind != InstanceKind::Distribution) {
    GridFunction other = random_monotone(rng, mesh, q);
    const Rational lambda = Rational(rng.uniform(0, 2)) / 4;
    for (std::size_t y = 0; y < mesh.node_count(); ++y) {
      centre[y] = lambda * centre[y] + (1 - lambda) * other[y];
    }
  }
  std::int64_t spread = 0;
  if (kind == InstanceKind::Distribution) spread = rng.uniform(1, 3);
  if (kind == InstanceKind::Mixture) spread = rng.uniform(0, 2);
  std::vector<Rational> lo(mesh.node_count()), hi(mesh.node_count());
  for (std::size_t y = 0; y < mesh.node_count(); ++y) {
    const bool fixed = mesh.touches_zero_face(mesh.node_at(y)) || y + 1 == mesh.node_count();
    const Rational e = fixed || spread == 0 ? Rational(0) : Rational(rng.uniform(0, spread)) / q;
    lo[y] = centre[y] - e < 0 ? Rational(0) : Rational(centre[y] - e);
    hi[y] = centre[y] + e > 1 ? Rational(1) : Rational(centre[y] + e);
  }
  BoundPair pair{GridFunction(mesh, max_below(mesh, std::move(lo)), std::string("lower")),
                 GridFunction(mesh, min_above(mesh, std::move(hi)), std::string("upper")), kind};
  return pair;
}

std::vector<NodeIndex> random_order(Rng& rng, const GridMesh& mesh) {
  std::vector<NodeIndex> order;
  order.reserve(mesh.node_count());
  for (std::size_t y = 0; y < mesh.node_count(); ++y) order.push_back(mesh.node_at(y));
  rng.shuffle(order);
  return order;
}

}  // namespace kboxkit
