#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "position.hpp"

using namespace hypdist;
using namespace hypdist::testing;

namespace {

Dimension dim_of(const Variety& v, const HypersurfaceFamily& fam, IndexSet s) {
  return intersection_dimension(v, fam, s);
}

}  // namespace

TEST_CASE("build_variety examples") {
  Variety p2 = V({}, 3);
  CHECK(p2.dimension() == 2);
  CHECK(p2.degree() == 1);
  Variety conic = V({"x0*x2 - x1^2"}, 3);
  CHECK(conic.dimension() == 1);
  CHECK(conic.degree() == 2);
  CHECK(error_name([] { V({"x0", "x1", "x2"}, 3); }) == "EmptyVariety");
  CHECK(error_name([] { V({"x0*x1", "x2"}, 3); }) == "ZeroDimensional");
  std::vector<HomoPoly> mixed{P("x0", 2)};
  CHECK(error_name([&] { build_variety(mixed, 3); }) == "MixedAmbient");
  std::vector<Rational> on{1, 1, 1}, off{1, 2, 3};
  CHECK(conic.contains(on));
  CHECK_FALSE(conic.contains(off));
}

TEST_CASE("build_family validation") {
  Variety conic = V({"x0*x2 - x1^2"}, 3);
  CHECK(error_name([&] { F(conic, {"x0*x2 - x1^2"}); }) == "VanishesOnVariety");
  Variety reducible = V({"x0*x1"}, 3);
  CHECK(error_name([&] { F(reducible, {"x0"}); }) == "MemberContainsComponent");
  Variety p2 = V({}, 3);
  CHECK(error_name([&] { build_family(p2, {}); }) == "EmptyInput");
  CHECK(error_name([&] { build_family(p2, {HomoPoly(3)}); }) == "VanishesOnVariety");
  auto mixed = F(p2, {"x0", "x1^2"});
  CHECK(mixed.lcm_degree() == 2);
  CHECK_FALSE(mixed.same_degree());
}

TEST_CASE("intersection_dimension examples") {
  Variety p2 = V({}, 3);
  auto fam = F(p2, {"x0", "x1", "x2", "x1 + x2"});
  CHECK(dim_of(p2, fam, {0}) == Dimension::of(1));
  CHECK(dim_of(p2, fam, {1, 2, 3}) == Dimension::of(0));
  CHECK(dim_of(p2, fam, {0, 1, 2}).is_empty());
  CHECK(error_name([&] { dim_of(p2, fam, {4}); }) == "IndexOutOfRange");
  CHECK(error_name([&] { dim_of(p2, fam, {}); }) == "EmptyInput");
}

TEST_CASE("distributive_constant examples") {
  Variety p2 = V({}, 3);
  auto three = distributive_constant(p2, F(p2, {"x0", "x1", "x2"}));
  CHECK(three.delta == 1);
  CHECK(three.witness == IndexSet{0});

  auto four = distributive_constant(p2, F(p2, {"x1", "x2", "x1 + x2", "x1 - x2"}));
  CHECK(four.delta == 2);
  CHECK(four.witness == IndexSet{0, 1, 2, 3});

  auto two = distributive_constant(p2, F(p2, {"x0", "x1"}));
  CHECK(two.delta == 1);

  Variety p1 = V({}, 2);
  auto p1fam = distributive_constant(p1, F(p1, {"x0", "x1", "x0 + x1"}));
  CHECK(p1fam.delta == 1);
  CHECK(p1fam.empty_subsets_skipped == 4);

  auto table = distributive_constant(p2, F(p2, {"x0", "x1", "x2"}), {14, true});
  CHECK(table.per_subset.size() == 7);
  CHECK(table.per_subset.back().dimension.is_empty());
  CHECK_FALSE(table.per_subset.back().ratio.has_value());
}

TEST_CASE("distributive_constant matches direct enumeration on random families") {
  std::mt19937_64 rng(1234);
  Variety p2 = V({}, 3);
  Variety conic = V({"x0*x2 - x1^2"}, 3);
  Variety quadric = V({"x0*x3 - x1*x2"}, 4);
  const Variety* vs[] = {&p2, &conic, &quadric};
  for (int trial = 0; trial < 24; ++trial) {
    const Variety& v = *vs[trial % 3];
    std::vector<HomoPoly> members;
    int q = 3 + trial % 3;
    for (int k = 0; k < q; ++k) {
      // Reuse earlier members' lines sometimes to force concurrency.
      HomoPoly h = random_linear(rng, v.num_vars(), 1);
      if (k >= 2 && trial % 2 == 0) h = members[0] + members[1].scaled(Rational(k));
      if (h.is_zero() || normal_form(h, v.basis()).is_zero()) h = random_linear(rng, v.num_vars(), 3);
      members.push_back(h);
    }
    HypersurfaceFamily fam = build_family(v, members);
    auto r = distributive_constant(v, fam);
    CHECK(r.delta == delta_by_enumeration(v, fam));
    CHECK(r.delta >= 1);
  }
}

TEST_CASE("hyperplane intersection dimensions agree with linear algebra") {
  std::mt19937_64 rng(77);
  for (std::size_t vars : {3u, 4u}) {
    Variety pn = V({}, vars);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<HomoPoly> members;
      for (int k = 0; k < 4; ++k) members.push_back(random_linear(rng, vars, 1));
      auto fam = build_family(pn, members);
      for (std::uint32_t mask = 1; mask < 16; ++mask) {
        IndexSet s;
        std::vector<HomoPoly> forms;
        for (std::size_t j = 0; j < 4; ++j)
          if (mask >> j & 1u) {
            s.push_back(j);
            forms.push_back(members[j]);
          }
        CHECK(intersection_dimension(pn, fam, s) == linear_dimension(forms, vars));
      }
    }
  }
}

TEST_CASE("distributive_constant invariances") {
  std::mt19937_64 rng(8);
  Variety p3 = V({}, 4);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<HomoPoly> members;
    for (int k = 0; k < 5; ++k) members.push_back(random_linear(rng, 4, 1));
    members[3] = members[0] + members[1];
    Rational base = distributive_constant(p3, build_family(p3, members)).delta;

    auto permuted = members;
    std::shuffle(permuted.begin(), permuted.end(), rng);
    CHECK(distributive_constant(p3, build_family(p3, permuted)).delta == base);

    auto scaled = members;
    scaled[2] = scaled[2].scaled(Rational(-7, 3));
    CHECK(distributive_constant(p3, build_family(p3, scaled)).delta == base);

    auto powered = members;
    powered[1] = powered[1].pow(2);
    powered[4] = powered[4].pow(3);
    CHECK(distributive_constant(p3, build_family(p3, powered)).delta == base);

    auto bigger = members;
    bigger.push_back(random_linear(rng, 4, 1));
    CHECK(distributive_constant(p3, build_family(p3, bigger)).delta >= base);
  }
}

TEST_CASE("subset cap") {
  Variety p1 = V({}, 2);
  std::vector<std::string> many;
  for (int k = 0; k < 5; ++k) many.push_back("x0 + " + std::to_string(k) + "x1");
  auto fam = F(p1, many);
  CHECK(error_name([&] { distributive_constant(p1, fam, {4, false}); }) == "SubsetCapExceeded");
  CHECK(distributive_constant(p1, fam, {5, false}).delta == 1);
}

TEST_CASE("classify_position examples") {
  Variety p2 = V({}, 3);
  auto gp = classify_position(p2, F(p2, {"x0", "x1", "x2"}));
  REQUIRE(gp.l.has_value());
  CHECK(*gp.l == 2);
  CHECK(gp.general_position);
  CHECK(gp.kappa == 2);
  REQUIRE(gp.t_vector.size() == 2);
  CHECK(gp.t_vector[0] == 1);
  CHECK(gp.t_vector[1] == 2);

  auto conc = classify_position(p2, F(p2, {"x1", "x2", "x1 + x2", "x0"}));
  REQUIRE(conc.l.has_value());
  CHECK(*conc.l == 3);
  CHECK_FALSE(conc.general_position);

  auto none = classify_position(p2, F(p2, {"x1", "x2", "x1 + x2", "x1 - x2"}));
  CHECK_FALSE(none.l.has_value());
  CHECK_FALSE(none.general_position);
}

TEST_CASE("dimension_profile examples") {
  Variety p2 = V({}, 3);
  auto fam = F(p2, {"x1", "x2", "x1 + x2", "x0"});
  auto prof = dimension_profile(p2, fam, IndexSet{0, 1, 2, 3});
  CHECK(prof.t_values == std::vector<int>{0, 1, 3});
  CHECK(prof.l_value == 3);
  REQUIRE(prof.prefix_dims.size() == 4);
  CHECK(prof.prefix_dims[0] == Dimension::of(1));
  CHECK(prof.prefix_dims[1] == Dimension::of(0));
  CHECK(prof.prefix_dims[2] == Dimension::of(0));
  CHECK(prof.prefix_dims[3].is_empty());

  auto gp = F(p2, {"x0", "x1", "x2"});
  auto p = dimension_profile(p2, gp, IndexSet{0, 1, 2});
  CHECK(p.t_values == std::vector<int>{0, 1, 2});

  auto never = F(p2, {"x1", "x1 - x2", "x2"});
  CHECK(error_name([&] { dimension_profile(p2, never, IndexSet{0, 1, 2}); }) == "NeverEmpty");
  CHECK(error_name([&] { dimension_profile(p2, gp, IndexSet{0, 0, 1}); }) == "InvalidOrdering");
  CHECK(error_name([&] { dimension_profile(p2, gp, IndexSet{0, 1}); }) == "InvalidOrdering");
}

TEST_CASE("dimension_profile prefix dims on random orderings") {
  std::mt19937_64 rng(31);
  Variety p3 = V({}, 4);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<HomoPoly> members;
    for (int k = 0; k < 6; ++k) members.push_back(random_linear(rng, 4, 1));
    auto fam = build_family(p3, members);
    IndexSet order{0, 1, 2, 3, 4, 5};
    std::shuffle(order.begin(), order.end(), rng);
    DimensionProfile prof;
    try {
      prof = dimension_profile(p3, fam, order);
    } catch (const DomainError& e) {
      CHECK(e.name() == "NeverEmpty");
      continue;
    }
    CHECK(prof.prefix_dims.front() == Dimension::of(2));
    for (std::size_t s = 1; s < prof.prefix_dims.size(); ++s) CHECK(prof.prefix_dims[s] <= prof.prefix_dims[s - 1]);
    CHECK(prof.prefix_dims.back().is_empty());
    CHECK(static_cast<int>(prof.prefix_dims.size()) == prof.l_value + 1);
    for (std::size_t s = 0; s + 1 < prof.prefix_dims.size(); ++s) CHECK_FALSE(prof.prefix_dims[s].is_empty());
  }
}

TEST_CASE("remark_bounds examples") {
  Variety p2 = V({}, 3);
  auto gp = F(p2, {"x0", "x1", "x2"});
  auto b = remark_bounds(p2, classify_position(p2, gp));
  REQUIRE(b.general.has_value());
  CHECK(*b.general == 1);

  auto conc = F(p2, {"x1", "x2", "x1 + x2", "x0"});
  auto cls = classify_position(p2, conc);
  auto bc = remark_bounds(p2, cls);
  REQUIRE(bc.subgeneral.has_value());
  CHECK(*bc.subgeneral == 2);
  CHECK(distributive_constant(p2, conc).delta <= *bc.subgeneral);

  PositionClass manual;
  manual.l = 3;
  manual.kappa = 1;
  manual.t_vector = {1, 3};
  auto bm = remark_bounds(p2, manual);
  REQUIRE(bm.index.has_value());
  CHECK(*bm.index == 2);
  REQUIRE(bm.t_vector.has_value());
  CHECK(*bm.t_vector == Rational(3, 2));
}

TEST_CASE("singleton traces on a plane plus a line") {
  // V = {x0 = 0} union {x1 = x2 = 0} in P^3, not equidimensional.
  Variety v = V({"x0*x1", "x0*x2"}, 4);
  CHECK(v.dimension() == 2);
  auto fam = F(v, {"x1", "x2", "x3", "x0 + x3"});
  auto r = distributive_constant(v, fam, {14, true});
  CHECK(r.singleton_anomalies.empty());
  for (std::size_t j = 0; j < fam.size(); ++j) CHECK(intersection_dimension(v, fam, IndexSet{j}) == Dimension::of(1));
  CHECK(r.delta == delta_by_enumeration(v, fam));
  CHECK(error_name([&] { F(v, {"x0"}); }) == "MemberContainsComponent");
}
