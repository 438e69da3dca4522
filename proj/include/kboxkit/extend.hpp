#ifndef KBOXKIT_EXTEND_HPP
#define KBOXKIT_EXTEND_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kboxkit/mesh.hpp"
#include "kboxkit/random_instances.hpp"

namespace kboxkit {

using Point = std::vector<Rational>;

enum class ExtensionMode { Sup, Inf, Lipschitz };

const char* to_string(ExtensionMode mode);
ExtensionMode parse_extension_mode(const std::string& text);

/// A grid function extended to the unit cube.
///
/// Sup mode takes the largest base value over nodes below the query point,
/// inf mode the smallest over nodes above it, and lipschitz mode interpolates
/// multilinearly on the containing cell. Each mode returns the base value at
/// mesh nodes.
class ExtendedFunction {
 public:
  ExtendedFunction(GridFunction base, ExtensionMode mode);

  const GridFunction& base() const { return base_; }
  ExtensionMode mode() const { return mode_; }

  /// Throws domain-error outside [0,1]^n or on a dimension mismatch.
  Rational evaluate(const Point& x) const;
  Rational operator()(const Point& x) const { return evaluate(x); }

 private:
  GridFunction base_;
  ExtensionMode mode_;
  // prefix maxima (sup) or suffix minima (inf) of the base values
  std::vector<Rational> envelope_;
};

inline Rational evaluate(const ExtendedFunction& ext, const Point& x) { return ext.evaluate(x); }

/// Index of the largest axis value <= t and of the smallest axis value >= t.
int floor_index(const std::vector<Rational>& axis, const Rational& t);
int ceil_index(const std::vector<Rational>& axis, const Rational& t);

/// Largest cell width over all axes.
Rational max_cell_width(const GridMesh& mesh);

/// Deterministic random rational point in the cube. One coordinate in eight
/// is snapped to a mesh coordinate so that cell faces get exercised.
Point random_point(Rng& rng, const GridMesh& mesh);

/// Random k-box with rational corners in the cube, as (lower, upper) corners
/// where exactly k coordinates differ.
std::pair<Point, Point> random_box(Rng& rng, const GridMesh& mesh, int k);

/// Signed vertex sum of the extension over the box with the given corners.
Rational extension_volume(const ExtendedFunction& ext, const Point& lower, const Point& upper);

struct ExtensionSandwichReport {
  std::size_t samples = 0;
  std::size_t lower_violations = 0;  // A(x) > ext(x)
  std::size_t upper_violations = 0;  // ext(x) > B(x)
  std::optional<Point> first_violation;
  bool passed() const { return lower_violations == 0 && upper_violations == 0; }
};

/// Samples points and compares the extension with the analytic family values.
/// Frank values are the rounded ones produced by evaluate_family.
ExtensionSandwichReport verify_extension_sandwich(const Family& lower, const Family& upper,
                                                  const ExtendedFunction& ext, std::size_t samples,
                                                  std::uint64_t seed = 1);

struct ExtensionVolumeReport {
  std::size_t boxes = 0;
  std::size_t negative = 0;
  Rational min_volume;
  std::optional<std::pair<Point, Point>> worst_box;
};

ExtensionVolumeReport sample_extension_volumes(const ExtendedFunction& ext, int k, std::size_t boxes,
                                               std::uint64_t seed = 1);

struct ExtensionGapReport {
  std::size_t samples = 0;
  Rational max_gap;  // largest sup-extension minus inf-extension
  Rational bound;    // 2 n h
  bool passed() const { return max_gap <= bound; }
};

ExtensionGapReport sample_extension_gap(const GridFunction& base, std::size_t samples, std::uint64_t seed = 1);

/// Reads one point per line (comma-separated rationals, '#' starts a comment)
/// and writes "x1,...,xn,value" rows with rationals as p/q.
void evaluate_csv(const ExtendedFunction& ext, std::istream& in, std::ostream& out);

/// Parses "a,b,c" into a point.
Point parse_point(const std::string& text);

}  // namespace kboxkit

#endif  // KBOXKIT_EXTEND_HPP
