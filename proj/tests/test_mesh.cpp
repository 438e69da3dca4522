#include "doctest.h"
#include "kboxkit/random_instances.hpp"
#include "support.hpp"

using namespace kboxkit;
using kboxkit::test::error_kind;
using kboxkit::test::grid;
using kboxkit::test::R;

TEST_SUITE("rational") {
  TEST_CASE("parses fractions integers and decimals exactly") {
    CHECK(parse_rational("1/2") == Rational(1) / 2);
    CHECK(parse_rational("-3/4") == Rational(-3) / 4);
    CHECK(parse_rational("6/8") == Rational(3) / 4);
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("0.1") == Rational(1) / 10);
    CHECK(parse_rational("2.5e-1") == Rational(1) / 4);
    CHECK(parse_rational("1E2") == 100);
    CHECK(parse_rational(".5") == Rational(1) / 2);
    // leading zeros stay decimal
    CHECK(parse_rational("0.25") == Rational(1) / 4);
    CHECK(parse_rational("010") == 10);
    CHECK(parse_rational("010/012") == Rational(5) / 6);
    CHECK(parse_rational("0.075") == Rational(3) / 40);
    CHECK(parse_rational("0") == 0);
  }

  TEST_CASE("rejects malformed text") {
    for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "1e", "--1", "0x10"}) {
      CAPTURE(bad);
      CHECK(error_kind([&] { parse_rational(bad); }) == ErrorKind::ParseError);
    }
  }

  TEST_CASE("formats as p/q") {
    CHECK(format_rational(Rational(1) / 2) == "1/2");
    CHECK(format_rational(Rational(3)) == "3/1");
    CHECK(format_rational(Rational(-2) / 6) == "-1/3");
    CHECK(parse_rational(format_rational(Rational(-7) / 13)) == Rational(-7) / 13);
  }

  TEST_CASE("double conversions") {
    CHECK(rational_from_double(0.5) == Rational(1) / 2);
    CHECK(rational_from_double(0.1) != Rational(1) / 10);
    CHECK(to_double(rational_from_double(0.1)) == 0.1);
    CHECK(rational_from_decimal_double(0.1) == Rational(1) / 10);
    CHECK(rational_from_decimal_double(-2.25) == Rational(-9) / 4);
  }
}

TEST_SUITE("mesh") {
  TEST_CASE("uniform meshes") {
    GridMesh m = make_uniform_mesh(2, 3);
    CHECK(m.dim() == 2);
    CHECK(m.axis(0) == std::vector<Rational>{0, R("1/2"), 1});
    CHECK(m.axis(1) == m.axis(0));
    CHECK(make_uniform_mesh(1, 2).axis(0) == std::vector<Rational>{0, 1});
    GridMesh m3 = make_uniform_mesh(3, 5);
    for (int i = 0; i < 3; ++i) CHECK(m3.axis(i) == std::vector<Rational>{0, R("1/4"), R("1/2"), R("3/4"), 1});
    CHECK(m3.node_count() == 125);
  }

  TEST_CASE("row-major order with axis 0 slowest") {
    GridMesh m = make_uniform_mesh(2, 3);
    CHECK(m.node_at(0) == NodeIndex{0, 0});
    CHECK(m.node_at(1) == NodeIndex{0, 1});
    CHECK(m.node_at(3) == NodeIndex{1, 0});
    for (std::size_t i = 0; i < m.node_count(); ++i) CHECK(m.flat_index(m.node_at(i)) == i);
  }

  TEST_CASE("mesh validation") {
    CHECK(error_kind([] { make_uniform_mesh(0, 3); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { make_uniform_mesh(2, 1); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { GridMesh({{0, R("1/2")}}); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { GridMesh({{R("1/4"), 1}}); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { GridMesh({{0, R("1/2"), R("1/2"), 1}}); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { GridMesh(std::vector<std::vector<Rational>>{{Rational(0)}}); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { GridMesh(std::vector<std::vector<Rational>>{}); }) == ErrorKind::InvalidParameter);
    CHECK_FALSE(error_kind([] { GridMesh({{0, R("1/3"), 1}, {0, 1}}); }));
  }

  TEST_CASE("grid function validation") {
    GridMesh m = make_uniform_mesh(2, 2);
    CHECK(error_kind([&] { GridFunction(m, {0, 0, 0}); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([&] { GridFunction(m, {0, 0, 0, R("3/2")}); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([&] { GridFunction(m, {0, 0, R("-1/2"), 1}); }) == ErrorKind::InvalidParameter);
  }

  TEST_CASE("family samples") {
    CHECK(grid("product", 2, 3).at({1, 1}) == R("1/4"));
    CHECK(grid("lukasiewicz", 3, 3).at({1, 1, 1}) == 0);
    CHECK(grid("min", 2, 3).at({1, 2}) == R("1/2"));
    CHECK(grid("drastic", 2, 3).at({1, 1}) == 0);
    CHECK(grid("drastic", 2, 3).at({1, 2}) == R("1/2"));
    CHECK(evaluate_family(parse_family("lukasiewicz"), {R("3/4"), R("1/2")}) == R("1/4"));
  }

  TEST_CASE("family names") {
    CHECK(parse_family("frank(2.5)").kind == FamilyKind::Frank);
    CHECK(parse_family("frank:-1").theta == -1.0);
    CHECK(error_kind([] { parse_family("frank(0)"); }) == ErrorKind::InvalidParameter);
    CHECK(error_kind([] { parse_family("gumbel"); }) == ErrorKind::InvalidParameter);
    CHECK(family_is_exact(parse_family("product")));
    CHECK_FALSE(family_is_exact(parse_family("frank(1)")));
  }

  TEST_CASE("frank is exact on the boundary") {
    Family f = parse_family("frank(1)");
    CHECK(evaluate_family(f, {0, R("1/3")}) == 0);
    CHECK(evaluate_family(f, {1, R("1/3")}) == R("1/3"));
    CHECK(evaluate_family(f, {R("2/7"), 1}) == R("2/7"));
    Rational mid = evaluate_family(f, {R("1/2"), R("1/2")});
    CHECK(mid > R("1/4"));  // positive dependence for theta > 0
    CHECK(mid < R("1/2"));
  }

  TEST_CASE("structural checks of the built-in families") {
    for (std::string name : {"product", "min", "lukasiewicz", "drastic", "frank(1)", "frank(-3)"}) {
      for (auto [n, g] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {2, 5}, {3, 4}}) {
        CAPTURE(name);
        CAPTURE(n);
        StructuralReport r = structural_check(grid(name, n, g));
        CHECK(r.grounded);
        CHECK(r.one_increasing);
        CHECK(r.uniform_marginals);
        CHECK(r.value_at_one == 1);
        CHECK(r.witnesses.empty());
      }
    }
  }

  TEST_CASE("structural witnesses") {
    GridMesh m = make_uniform_mesh(2, 3);
    StructuralReport ones = structural_check(GridFunction(m, std::vector<Rational>(9, Rational(1))));
    CHECK_FALSE(ones.grounded);
    CHECK(ones.one_increasing);
    CHECK_FALSE(ones.uniform_marginals);
    REQUIRE_FALSE(ones.witnesses.empty());
    bool zero_listed = false;
    for (const auto& w : ones.witnesses) {
      if (w.property == "grounded") {
        zero_listed = std::find(w.nodes.begin(), w.nodes.end(), NodeIndex{0, 0}) != w.nodes.end();
      }
    }
    CHECK(zero_listed);

    GridFunction dip = grid("product", 2, 3);
    dip.at({2, 1}) = R("1/8");  // below the value 1/4 at (1/2,1/2)
    StructuralReport r = structural_check(dip);
    CHECK(r.grounded);
    CHECK_FALSE(r.one_increasing);
    CHECK_FALSE(r.uniform_marginals);
    CHECK(r.witnesses.size() >= 2);
  }

  TEST_CASE("ordering precondition") {
    GridFunction w = grid("lukasiewicz", 2, 3), m = grid("min", 2, 3);
    CHECK_FALSE(error_kind([&] { require_ordered(w, m); }));
    CHECK(error_kind([&] { require_ordered(m, w); }) == ErrorKind::PreconditionError);
    CHECK(error_kind([&] { require_ordered(w, grid("min", 2, 4)); }) == ErrorKind::InvalidParameter);
  }

  TEST_CASE("dominance envelopes match a direct scan") {
    Rng rng(5);
    GridMesh m = make_uniform_mesh(3, 4);
    std::vector<Rational> v(m.node_count());
    for (auto& x : v) x = rng.unit_rational(9);
    auto hi = max_below(m, v), lo = min_above(m, v);
    for (std::size_t y = 0; y < m.node_count(); ++y) {
      NodeIndex ny = m.node_at(y);
      Rational mx = v[y], mn = v[y];
      for (std::size_t z = 0; z < m.node_count(); ++z) {
        NodeIndex nz = m.node_at(z);
        bool below = true, above = true;
        for (int i = 0; i < 3; ++i) {
          below = below && nz[i] <= ny[i];
          above = above && nz[i] >= ny[i];
        }
        if (below) mx = std::max(mx, v[z]);
        if (above) mn = std::min(mn, v[z]);
      }
      CHECK(hi[y] == mx);
      CHECK(lo[y] == mn);
    }
  }
}

TEST_SUITE("random_instances") {
  TEST_CASE("random pairs are standardized and ordered") {
    for (auto [n, g] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 3}, {3, 4}}) {
      GridMesh m = make_uniform_mesh(n, g);
      Rng rng(static_cast<std::uint64_t>(n * 10 + g));
      for (int i = 0; i < 20; ++i) {
        BoundPair p = random_standardized_pair(rng, m);
        CHECK(structural_check(p.lower).standardized());
        CHECK(structural_check(p.upper).standardized());
        CHECK_FALSE(error_kind([&] { require_ordered(p.lower, p.upper); }));
        if (p.kind == InstanceKind::Tight) CHECK(p.lower == p.upper);
      }
    }
  }

  TEST_CASE("seeded generation is reproducible") {
    GridMesh m = make_uniform_mesh(2, 4);
    Rng a(99), b(99);
    for (int i = 0; i < 5; ++i) {
      BoundPair p = random_standardized_pair(a, m), q = random_standardized_pair(b, m);
      CHECK(p.lower == q.lower);
      CHECK(p.upper == q.upper);
    }
    Rng c(3);
    auto order = random_order(c, m);
    CHECK(order.size() == m.node_count());
    std::sort(order.begin(), order.end());
    CHECK(std::adjacent_find(order.begin(), order.end()) == order.end());
  }

  TEST_CASE("distribution functions are n-increasing") {
    Rng rng(1);
    GridMesh m = make_uniform_mesh(3, 4);
    for (int i = 0; i < 5; ++i) {
      GridFunction d = random_distribution(rng, m);
      CHECK(structural_check(d).standardized());
      for (const auto& b : enumerate_kboxes(m, 3)) CHECK(box_volume(d, b) >= 0);
    }
  }
}

TEST_CASE("drastic semicopula is zero off the marginals") {
  Family d = parse_family("drastic");
  CHECK(evaluate_family(d, {R("1/2")}) == R("1/2"));
  CHECK(evaluate_family(d, {1, R("1/2"), R("1/2")}) == 0);
  CHECK(evaluate_family(d, {1, 1, R("1/3")}) == R("1/3"));
  CHECK(evaluate_family(d, {R("1/2"), R("1/2")}) == 0);
}
