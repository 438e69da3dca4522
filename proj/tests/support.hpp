#ifndef KBOXKIT_TESTS_SUPPORT_HPP
#define KBOXKIT_TESTS_SUPPORT_HPP

#include <optional>
#include <string>

#include "kboxkit/error.hpp"
#include "kboxkit/kbox.hpp"
#include "kboxkit/mesh.hpp"

namespace kboxkit::test {

inline Rational R(const std::string& text) { return parse_rational(text); }

inline GridFunction grid(const std::string& family, int n, int g) {
  return sample_family(parse_family(family), make_uniform_mesh(n, g));
}

/// Kind of the kboxkit::Error thrown by `f`, or nullopt when it returns.
template <typename F>
std::optional<ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline KBox box(NodeIndex lower, NodeIndex upper) { return KBox(std::move(lower), std::move(upper)); }

}  // namespace kboxkit::test

#endif  // KBOXKIT_TESTS_SUPPORT_HPP
