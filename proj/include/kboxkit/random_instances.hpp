#ifndef KBOXKIT_RANDOM_INSTANCES_HPP
#define KBOXKIT_RANDOM_INSTANCES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kboxkit/mesh.hpp"

namespace kboxkit {

/// Seeded generator. Integers are reduced from the raw mt19937_64 stream by
/// modulo, so a seed produces the same sequence with every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// True with probability num/den.
  bool chance(std::int64_t num, std::int64_t den) { return uniform(0, den - 1) < num; }
  /// p/q with q drawn from [1, max_denominator] and p from [0, q].
  Rational unit_rational(std::int64_t max_denominator);

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

enum class InstanceKind {
  Distribution,  // bounds around a grid distribution function: ASL holds by construction
  Mixture,       // bounds around a mix of a distribution and a random monotone function
  Tight,         // A = B = a random mixture
};

const char* to_string(InstanceKind kind);

struct BoundPair {
  GridFunction lower;
  GridFunction upper;
  InstanceKind kind = InstanceKind::Distribution;
};

/// Grid distribution function of random nonnegative cell weights, normalized to 1 at the all-ones node.
GridFunction random_distribution(Rng& rng, const GridMesh& mesh);

/// Grounded, 1-increasing, value 1 at the all-ones node; interior values are
/// running maxima of multiples of 1/denominator.
GridFunction random_monotone(Rng& rng, const GridMesh& mesh, int denominator);

/// Standardized pair A <= B built from a random centre function F:
/// A is the running maximum of max(0, F - e), B the running minimum of
/// min(1, F + e), with noise e = 0 on the zero faces and at the all-ones node.
BoundPair random_standardized_pair(Rng& rng, const GridMesh& mesh);

/// Random permutation of the mesh nodes.
std::vector<NodeIndex> random_order(Rng& rng, const GridMesh& mesh);

}  // namespace kboxkit

#endif  // KBOXKIT_RANDOM_INSTANCES_HPP
