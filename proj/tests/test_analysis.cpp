#include "doctest.h"
#include "kboxkit/analysis.hpp"
#include "kboxkit/construct.hpp"
#include "kboxkit/random_instances.hpp"
#include "support.hpp"

using namespace kboxkit;
using kboxkit::test::error_kind;
using kboxkit::test::grid;
using kboxkit::test::R;

TEST_SUITE("analysis") {
  TEST_CASE("W and M avoid sure loss") {
    GridFunction w = grid("lukasiewicz", 2, 3), m = grid("min", 2, 3), p = grid("product", 2, 3);
    AslVerdict v = check_asl(w, m, 2);
    CHECK(v.satisfied);
    CHECK(v.min_l_value >= 0);
    CHECK_FALSE(v.violating_union.has_value());
    REQUIRE(v.feasible.has_value());
    CHECK(check_k_increasing(*v.feasible, 2).passed);
    CHECK_FALSE(error_kind([&] { require_ordered(w, *v.feasible); }));
    CHECK_FALSE(error_kind([&] { require_ordered(*v.feasible, m); }));
    // the product is an explicit member of the sandwich
    CHECK_FALSE(error_kind([&] { require_ordered(w, p); }));
    CHECK_FALSE(error_kind([&] { require_ordered(p, m); }));
    CHECK(check_k_increasing(p, 2).passed);
  }

  TEST_CASE("three-dimensional W incurs sure loss for k = 3") {
    GridFunction w3 = grid("lukasiewicz", 3, 3);
    AslVerdict v = check_asl(w3, w3, 3);
    CHECK_FALSE(v.satisfied);
    CHECK_FALSE(v.feasible.has_value());
    REQUIRE(v.violating_union.has_value());
    CHECK(v.violating_union->boxes().size() == 1);
    CHECK(v.violating_union->boxes().begin()->first == KBox({1, 1, 1}, {2, 2, 2}));
    CHECK(l_value(w3, w3, *v.violating_union) < 0);
    CHECK(check_asl(w3, w3, 2).satisfied);
  }

  TEST_CASE("both procedures agree on random pairs") {
    Rng rng(101);
    int satisfied = 0, violated = 0;
    for (auto [n, g] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 3}}) {
      GridMesh mesh = make_uniform_mesh(n, g);
      for (int trial = 0; trial < 15; ++trial) {
        BoundPair pair = random_standardized_pair(rng, mesh);
        for (int k = 1; k <= n; ++k) {
          AslVerdict v = check_asl(pair.lower, pair.upper, k);
          (v.satisfied ? satisfied : violated)++;
          SandwichResult full = solve_sandwich(pair.lower, pair.upper, k, SandwichGoal::Feasible, std::nullopt,
                                               lp::Mode::Exact, BoxFamily::All);
          CHECK(full.feasible == v.satisfied);
          AslVerdict f = check_asl(pair.lower, pair.upper, k, BoundClass::Standardized, lp::Mode::Float);
          CHECK(f.satisfied == v.satisfied);
        }
      }
    }
    CHECK(satisfied > 10);
    CHECK(violated > 10);
  }

  TEST_CASE("feasible member dominates L from below") {
    Rng rng(7);
    GridMesh mesh = make_uniform_mesh(2, 4);
    auto boxes = enumerate_kboxes(mesh, 2);
    for (int trial = 0; trial < 10; ++trial) {
      BoundPair pair = random_standardized_pair(rng, mesh);
      AslVerdict v = check_asl(pair.lower, pair.upper, 2);
      if (!v.satisfied) continue;
      for (int u = 0; u < 20; ++u) {
        BoxUnion dub(2);
        for (int i = 0; i < 3; ++i) {
          dub.add(boxes[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(boxes.size()) - 1))]);
        }
        const Rational c = l_value(*v.feasible, *v.feasible, dub);
        CHECK(l_value(pair.lower, pair.upper, dub) >= c);
        CHECK(c >= 0);
      }
    }
  }

  TEST_CASE("pointwise extremes for W and M") {
    GridFunction w = grid("lukasiewicz", 2, 3), m = grid("min", 2, 3), p = grid("product", 2, 3);
    for (std::size_t y = 0; y < w.mesh.node_count(); ++y) {
      NodeIndex x = w.mesh.node_at(y);
      CHECK(pointwise_sup(w, m, x, 2) == m[y]);
      CHECK(pointwise_inf(w, m, x, 2) == w[y]);
      CHECK(pointwise_sup(p, p, x, 2) == p[y]);
      CHECK(pointwise_inf(p, p, x, 2) == p[y]);
    }
    GridFunction w3 = grid("lukasiewicz", 3, 3);
    CHECK(error_kind([&] { pointwise_sup(w3, w3, {1, 1, 1}, 3); }) == ErrorKind::DomainError);
  }

  TEST_CASE("coherence of W and M") {
    GridFunction w = grid("lukasiewicz", 2, 3), m = grid("min", 2, 3);
    for (CoherenceSide side : {CoherenceSide::Upper, CoherenceSide::Lower}) {
      CoherenceReport r = check_coherence(w, m, 2, side);
      CHECK(r.coherent);
      CHECK(r.witnesses.empty());
      CHECK(r.records.size() == 9);
      for (const auto& rec : r.records) {
        CHECK(rec.functional_test);
        CHECK(rec.extreme_test);
      }
    }
    CoherenceReport semi = coherence_upper(w, m, 2, BoundClass::Semicopula);
    REQUIRE(semi.bound_lipschitz.has_value());
    CHECK(*semi.bound_lipschitz);
  }

  TEST_CASE("equal bounds are coherent on both sides") {
    GridFunction p = grid("product", 3, 3);
    for (int k = 1; k <= 3; ++k) {
      CHECK(coherence_upper(p, p, k).coherent);
      CHECK(coherence_lower(p, p, k).coherent);
    }
  }

  TEST_CASE("a forced value makes the lower bound incoherent") {
    GridFunction m = grid("min", 2, 5);
    GridFunction w = grid("lukasiewicz", 2, 5);
    w.at({2, 2}) = R("1/2");
    GridFunction a(w.mesh, max_below(w.mesh, w.values));
    CHECK(structural_check(a).standardized());
    CHECK(coherence_upper(a, m, 2).coherent);
    CoherenceReport low = coherence_lower(a, m, 2);
    CHECK_FALSE(low.coherent);
    CHECK(std::find(low.witnesses.begin(), low.witnesses.end(), NodeIndex{1, 2}) != low.witnesses.end());
    for (const auto& rec : low.records) {
      CHECK(rec.functional_test == rec.extreme_test);
      if (rec.node == NodeIndex{1, 2}) CHECK(rec.extreme == R("1/4"));
    }
  }

  TEST_CASE("lowering M at one node") {
    GridFunction w = grid("lukasiewicz", 2, 5), m = grid("min", 2, 5);
    m.at({2, 2}) = R("1/4");
    CoherenceReport r = coherence_upper(w, m, 2);
    std::size_t failing = 0;
    for (const auto& rec : r.records) {
      CHECK(rec.functional_test == rec.extreme_test);
      if (!rec.extreme_test) ++failing;
    }
    CHECK(failing == r.witnesses.size());
    CHECK(r.coherent == r.witnesses.empty());
  }

  TEST_CASE("coherence preconditions") {
    GridFunction w3 = grid("lukasiewicz", 3, 3);
    try {
      coherence_upper(w3, w3, 3);
      FAIL("expected a sure-loss error");
    } catch (const SureLossError& e) {
      CHECK(l_value(w3, w3, e.witness()) < 0);
    }
    GridFunction w = grid("lukasiewicz", 2, 3), m = grid("min", 2, 3);
    GridFunction low = w;
    low.at({2, 2}) = R("1/2");
    CHECK(error_kind([&] { coherence_upper(low, m, 2); }) == ErrorKind::PreconditionError);
    CHECK(error_kind([&] { coherence_upper(low, m, 2, BoundClass::Any); }) == ErrorKind::PreconditionError);
  }

  TEST_CASE("bound classes") {
    Rng rng(3);
    GridMesh mesh = make_uniform_mesh(2, 4);
    GridFunction d = random_distribution(rng, mesh);
    CHECK_FALSE(error_kind([&] { require_bound_class(d, d, BoundClass::Standardized); }));
    GridFunction w = grid("lukasiewicz", 2, 4);
    CHECK_FALSE(error_kind([&] { require_bound_class(w, w, BoundClass::Semicopula); }));
    GridFunction half(mesh, std::vector<Rational>(mesh.node_count(), Rational(0)));
    half[mesh.node_count() - 1] = R("1/2");
    CHECK(error_kind([&] { require_bound_class(half, half, BoundClass::Standardized); }) ==
          ErrorKind::PreconditionError);
    CHECK_FALSE(error_kind([&] { require_bound_class(half, half, BoundClass::Any); }));
    CHECK(parse_bound_class("semicopula") == BoundClass::Semicopula);
    CHECK(error_kind([] { parse_bound_class("copula"); }) == ErrorKind::InvalidParameter);
  }

  TEST_CASE("Lipschitz checks") {
    CHECK(lipschitz_check(grid("min", 2, 5)).passed);
    CHECK(lipschitz_check(grid("product", 3, 4)).passed);
    CHECK(lipschitz_check(grid("lukasiewicz", 2, 5)).passed);
    LipschitzReport d = lipschitz_check(grid("drastic", 2, 5));
    CHECK_FALSE(d.passed);
    REQUIRE_FALSE(d.violations.empty());
    CHECK(d.violations.front().jump > d.violations.front().distance);
  }
}
