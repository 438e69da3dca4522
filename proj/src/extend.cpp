#include "kboxkit/extend.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "kboxkit/error.hpp"
#include "kboxkit/kbox.hpp"

namespace kboxkit {

const char* to_string(ExtensionMode mode) {
  switch (mode) {
    case ExtensionMode::Sup: return "sup";
    case ExtensionMode::Inf: return "inf";
    case ExtensionMode::Lipschitz: return "lipschitz";
  }
  return "unknown";
}

ExtensionMode parse_extension_mode(const std::string& text) {
  if (text == "sup") return ExtensionMode::Sup;
  if (text == "inf") return ExtensionMode::Inf;
  if (text == "lipschitz") return ExtensionMode::Lipschitz;
  throw invalid_parameter("extension mode must be sup, inf or lipschitz, got '" + text + "'");
}

ExtendedFunction::ExtendedFunction(GridFunction base, ExtensionMode mode) : base_(std::move(base)), mode_(mode) {
  if (mode_ == ExtensionMode::Sup) envelope_ = max_below(base_.mesh, base_.values);
  if (mode_ == ExtensionMode::Inf) envelope_ = min_above(base_.mesh, base_.values);
}

int floor_index(const std::vector<Rational>& axis, const Rational& t) {
  auto it = std::upper_bound(axis.begin(), axis.end(), t);
  if (it == axis.begin()) throw domain_error("coordinate below the mesh");
  return static_cast<int>(it - axis.begin()) - 1;
}

int ceil_index(const std::vector<Rational>& axis, const Rational& t) {
  auto it = std::lower_bound(axis.begin(), axis.end(), t);
  if (it == axis.end()) throw domain_error("coordinate above the mesh");
  return static_cast<int>(it - axis.begin());
}

Rational ExtendedFunction::evaluate(const Point& x) const {
  const GridMesh& mesh = base_.mesh;
  if (static_cast<int>(x.size()) != mesh.dim()) {
    throw domain_error("point has " + std::to_string(x.size()) + " coordinates, mesh has " +
                       std::to_string(mesh.dim()));
  }
  for (const auto& t : x) {
    if (t < 0 || t > 1) throw domain_error("point " + format_rational(t) + " lies outside the unit cube");
  }
  const int n = mesh.dim();
  NodeIndex node(n);
  switch (mode_) {
    case ExtensionMode::Sup:
      for (int i = 0; i < n; ++i) node[i] = floor_index(mesh.axis(i), x[i]);
      return envelope_[mesh.flat_index(node)];
    case ExtensionMode::Inf:
      for (int i = 0; i < n; ++i) node[i] = ceil_index(mesh.axis(i), x[i]);
      return envelope_[mesh.flat_index(node)];
    case ExtensionMode::Lipschitz: break;
  }
  std::vector<Rational> t(n);
  for (int i = 0; i < n; ++i) {
    const auto& axis = mesh.axis(i);
    node[i] = std::min(floor_index(axis, x[i]), static_cast<int>(axis.size()) - 2);
    t[i] = (x[i] - axis[node[i]]) / (axis[node[i] + 1] - axis[node[i]]);
  }
  Rational value = 0;
  NodeIndex corner(n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Rational weight = 1;
    for (int i = 0; i < n && weight != 0; ++i) {
      const bool up = (mask >> i) & 1u;
      corner[i] = node[i] + (up ? 1 : 0);
      weight *= up ? t[i] : Rational(1 - t[i]);
    }
    if (weight != 0) value += weight * base_.at(corner);
  }
  return value;
}

Rational max_cell_width(const GridMesh& mesh) {
  Rational h = 0;
  for (int i = 0; i < mesh.dim(); ++i) {
    const auto& axis = mesh.axis(i);
    for (std::size_t j = 1; j < axis.size(); ++j) h = std::max(h, Rational(axis[j] - axis[j - 1]));
  }
  return h;
}

namespace {

Rational random_coordinate(Rng& rng, const GridMesh& mesh, int axis) {
  if (rng.chance(1, 8)) {
    const auto& values = mesh.axis(axis);
    return values[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(values.size()) - 1))];
  }
  return rng.unit_rational(1024);
}

}  // namespace

Point random_point(Rng& rng, const GridMesh& mesh) {
  Point x(mesh.dim());
  for (int i = 0; i < mesh.dim(); ++i) x[i] = random_coordinate(rng, mesh, i);
  return x;
}

std::pair<Point, Point> random_box(Rng& rng, const GridMesh& mesh, int k) {
  require_order(mesh, k);
  std::vector<int> axes(mesh.dim());
  for (int i = 0; i < mesh.dim(); ++i) axes[i] = i;
  rng.shuffle(axes);
  Point lower(mesh.dim()), upper(mesh.dim());
  for (int j = 0; j < mesh.dim(); ++j) {
    const int i = axes[j];
    if (j < k) {
      Rational a = random_coordinate(rng, mesh, i), b = random_coordinate(rng, mesh, i);
      while (a == b) b = random_coordinate(rng, mesh, i);
      if (b < a) std::swap(a, b);
      lower[i] = a;
      upper[i] = b;
    } else {
      lower[i] = upper[i] = random_coordinate(rng, mesh, i);
    }
  }
  return {lower, upper};
}

Rational extension_volume(const ExtendedFunction& ext, const Point& lower, const Point& upper) {
  if (lower.size() != upper.size()) throw invalid_parameter("box corners differ in dimension");
  std::vector<std::size_t> varying;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) throw invalid_parameter("box lower corner exceeds upper corner");
    if (lower[i] != upper[i]) varying.push_back(i);
  }
  Rational volume = 0;
  Point vertex = lower;
  for (unsigned mask = 0; mask < (1u << varying.size()); ++mask) {
    int lows = 0;
    for (std::size_t j = 0; j < varying.size(); ++j) {
      const bool up = (mask >> j) & 1u;
      vertex[varying[j]] = up ? upper[varying[j]] : lower[varying[j]];
      if (!up) ++lows;
    }
    const Rational v = ext.evaluate(vertex);
    if (lows % 2 == 0) {
      volume += v;
    } else {
      volume -= v;
    }
  }
  return volume;
}

ExtensionSandwichReport verify_extension_sandwich(const Family& lower, const Family& upper,
                                                  const ExtendedFunction& ext, std::size_t samples,
                                                  std::uint64_t seed) {
  Rng rng(seed);
  ExtensionSandwichReport report;
  for (std::size_t s = 0; s < samples; ++s) {
    Point x = random_point(rng, ext.base().mesh);
    const Rational v = ext.evaluate(x);
    const bool low = evaluate_family(lower, x) > v;
    const bool high = v > evaluate_family(upper, x);
    ++report.samples;
    if (low) ++report.lower_violations;
    if (high) ++report.upper_violations;
    if ((low || high) && !report.first_violation) report.first_violation = x;
  }
  return report;
}

ExtensionVolumeReport sample_extension_volumes(const ExtendedFunction& ext, int k, std::size_t boxes,
                                               std::uint64_t seed) {
  Rng rng(seed);
  ExtensionVolumeReport report;
  for (std::size_t s = 0; s < boxes; ++s) {
    auto box = random_box(rng, ext.base().mesh, k);
    const Rational v = extension_volume(ext, box.first, box.second);
    if (report.boxes == 0 || v < report.min_volume) {
      report.min_volume = v;
      report.worst_box = box;
    }
    ++report.boxes;
    if (v < 0) ++report.negative;
  }
  return report;
}

ExtensionGapReport sample_extension_gap(const GridFunction& base, std::size_t samples, std::uint64_t seed) {
  ExtendedFunction sup(base, ExtensionMode::Sup), inf(base, ExtensionMode::Inf);
  Rng rng(seed);
  ExtensionGapReport report;
  report.bound = 2 * base.mesh.dim() * max_cell_width(base.mesh);
  for (std::size_t s = 0; s < samples; ++s) {
    Point x = random_point(rng, base.mesh);
    const Rational gap = sup.evaluate(x) - inf.evaluate(x);
    const Rational size = gap < 0 ? Rational(-gap) : gap;
    if (report.samples == 0 || size > report.max_gap) report.max_gap = size;
    ++report.samples;
  }
  return report;
}

Point parse_point(const std::string& text) {
  Point x;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw parse_error("empty coordinate in '" + text + "'");
    x.push_back(parse_rational(field.substr(first, last - first + 1)));
  }
  if (x.empty()) throw parse_error("empty point");
  return x;
}

void evaluate_csv(const ExtendedFunction& ext, std::istream& in, std::ostream& out) {
  const int n = ext.base().mesh.dim();
  for (int i = 0; i < n; ++i) out << 'x' << (i + 1) << ',';
  out << "value\n";
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Point x;
    try {
      x = parse_point(line);
    } catch (const Error& e) {
      throw parse_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    const Rational v = ext.evaluate(x);
    for (const auto& t : x) out << format_rational(t) << ',';
    out << format_rational(v) << '\n';
  }
}

}  // namespace kboxkit
