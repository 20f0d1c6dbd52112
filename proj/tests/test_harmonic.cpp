#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "heis/function_tag.hpp"
#include "heis/harmonic.hpp"
#include "heis/partition.hpp"
#include "oracles.hpp"

using namespace heis;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(BigInt(n), BigInt(d)); }

std::vector<Function> harmonic_family() {
  return {Function::character(2, 2),
          Function::character(3, q(3, 2)),
          Function::character(q(3, 2), 3),
          Function::character(q(5, 4), 5),
          Function::h0(),
          Function::h1(),
          Function::translate(Function::h0(), {1, 2, 1}),
          Function::translate(Function::h1(), {-2, 1, 3}),
          Function::sum(Function::h0(), Function::scale(Function::character(2, 2), 2)),
          Function::sum(Function::scale(Function::h1(), q(1, 3)), Function::translate(Function::h0(), {0, 1, 5}))};
}

}  // namespace

TEST_CASE("measures") {
  const auto sw = Measure::southwest();
  REQUIRE(sw.atoms().size() == 2);
  CHECK(sw.weight_of(inverse(gen_a())) == Rational(1));
  CHECK(sw.weight_of(inverse(gen_b())) == Rational(1));
  CHECK(sw.total_mass() == 2);
  CHECK(sw.probability_normalized().total_mass() == 1);
  CHECK(Measure::southwest_probability().weight_of(inverse(gen_a())) == q(1, 2));
  CHECK_FALSE(sw.support_commutes());
  CHECK_THROWS_AS(Measure({{gen_a(), 0}}), std::domain_error);
  CHECK_THROWS_AS(Measure({{gen_a(), 1}, {gen_a(), 2}}), std::domain_error);
  CHECK_THROWS_AS(Measure({}), std::domain_error);

  const Measure mu({{gen_a(), q(1, 3)}, {{-1, -1, 4}, q(2, 3)}}, "m");
  const auto back = measure_from_json(nlohmann::json::parse(measure_to_json(mu).dump()));
  REQUIRE(back.atoms().size() == 2);
  CHECK(back.weight_of({-1, -1, 4}) == q(2, 3));

  const std::string path = "test_harmonic_measure.json";
  std::ofstream(path) << R"([[[1,0,0],"1"],[[-1,0,0],"1"],[[0,1,0],"1"],[[0,-1,0],"1"]])";
  CHECK(resolve_measure(path).atoms().size() == 4);
  std::remove(path.c_str());
  CHECK(resolve_measure("sw").total_mass() == 2);
  CHECK(resolve_measure("sw-prob").total_mass() == 1);
  CHECK_THROWS(resolve_measure("no-such-file.json"));
}

TEST_CASE("operator examples") {
  const auto sw = Measure::southwest();
  CHECK(apply_operator(sw, Function::potential(), {5, 4, 12}) == 11);
  CHECK(apply_operator(sw, Function::character(2, 2), identity()) == 1);
  CHECK(apply_operator(sw, Function::h0(), {0, 2, 4}) == 3);
  CHECK(Function::h0()({0, 2, 4}) == 3);
}

TEST_CASE("characters are harmonic exactly when 1/r + 1/s = 1") {
  const auto sw = Measure::southwest();
  const Box box = Box::symmetric(4, 4, 6);
  for (std::int64_t rn = 1; rn <= 6; ++rn)
    for (std::int64_t rd = 1; rd <= 3; ++rd) {
      const Rational r = q(rn, rd);
      if (r <= 1) continue;
      const Rational s = r / (r - 1);
      CHECK(harmonic_residual(sw, Function::character(r, s), box).harmonic());
      CHECK(character_harmonicity(sw, r, s) == 0);
      CHECK_FALSE(harmonic_residual(sw, Function::character(r, s + 1), box).harmonic());
    }
  CHECK(character_harmonicity(sw, 2, 3) == q(1, 6));
  CHECK(character_harmonicity(sw, 3, q(3, 2), 1) == 0);
  CHECK_THROWS_AS(character_harmonicity(sw, 2, 2, 2), std::domain_error);
  const Measure central({{gen_c(), q(1, 2)}, {inverse(gen_c()), q(1, 2)}});
  CHECK(character_harmonicity(central, 1, 1, 1) == 0);
  CHECK(character_harmonicity(central, 1, 1, 2) == q(1, 4));
}

TEST_CASE("residuals of the harmonic family") {
  const auto sw = Measure::southwest();
  const auto swp = Measure::southwest_probability();
  const Box box = Box::symmetric(8, 8, 30);
  const auto damp = Function::character(q(1, 2), q(1, 2));
  for (const auto& f : harmonic_family()) {
    INFO(f.tag());
    CHECK(harmonic_residual(sw, f, box).harmonic());
    CHECK(superharmonic_check(sw, f, box).holds);
    CHECK(harmonic_residual(swp, Function::product(f, damp), box).harmonic());
    // monotone along a-orbits
    box.for_each([&](const GroupElement& g) {
      if (g.x == 0 && g.y == 0) CHECK(f(multiply(inverse(gen_a()), g)) <= f(g));
    });
  }
  // non-harmonic controls stay non-harmonic after damping
  const auto bad = Function::character(2, 3);
  CHECK_FALSE(harmonic_residual(sw, bad, box).harmonic());
  CHECK_FALSE(harmonic_residual(swp, Function::product(bad, damp), box).harmonic());
}

TEST_CASE("the potential has residual exactly the indicator of e") {
  const auto sw = Measure::southwest();
  const auto rep = harmonic_residual(sw, Function::potential(), Box::symmetric(6, 6, 20));
  CHECK(rep.max_defect == 1);
  CHECK(rep.nonzero_points == 1);
  REQUIRE(rep.witness.has_value());
  CHECK(*rep.witness == identity());
  CHECK(superharmonic_check(sw, Function::potential(), Box::symmetric(6, 6, 20)).holds);
}

TEST_CASE("the a-axis indicator is not superharmonic") {
  const auto sw = Measure::southwest();
  const auto f = Function::a_axis_indicator();
  const auto r = superharmonic_check(sw, f, Box::symmetric(3, 3, 3));
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness_defect < 0);
  CHECK(f(*r.witness) < apply_operator(sw, f, *r.witness));
  // it is subharmonic: f <= P f everywhere
  Box::symmetric(5, 5, 10).for_each([&](const GroupElement& g) { CHECK(f(g) <= apply_operator(sw, f, g)); });
}

TEST_CASE("center shifts") {
  const Box box = Box::symmetric(4, 4, 10);
  CHECK(center_shift_defect(Function::character(2, 2), box).harmonic());
  CHECK(center_shift_defect(Function::h0(), box).max_defect > 0);
  CHECK(center_shift_defect(Function::potential(), box).max_defect > 0);
  CHECK(count(5, 4, 12) != count(5, 4, 13));
}

TEST_CASE("potential partial sums") {
  CHECK(potential_partial_sum(0, identity()) == 1);
  CHECK(potential_partial_sum(8, {5, 4, 12}) == 0);
  CHECK(potential_partial_sum(9, {5, 4, 12}) == 11);
  CHECK(potential_partial_sum(2, {1, 1, 1}) == 1);
  for (std::int64_t x = 0; x <= 5; ++x)
    for (std::int64_t y = 0; y <= 5; ++y)
      for (std::int64_t z = 0; z <= x * y; ++z) CHECK(potential_partial_sum(x + y + 2, {x, y, z}) == count(x, y, z));
}

TEST_CASE("seed iteration closed form") {
  const auto sw = Measure::southwest();
  const auto psi0 = Function::a_axis_indicator();
  CHECK(iterate_seed(sw, psi0, 0, {3, 0, 0}) == 1);
  CHECK(iterate_seed(sw, psi0, 9, {0, 4, 12}) == 11);
  CHECK_THROWS_AS(iterate_seed(sw, psi0, -1, identity()), std::domain_error);
  std::vector<GroupElement> pts;
  for (std::int64_t x = -2; x <= 2; x += 2)
    for (std::int64_t y = 0; y <= 4; ++y)
      for (std::int64_t z = 0; z <= 8; ++z) pts.push_back({x, y, z});
  const auto seq = iterate_seed_sequence(sw, psi0, 14, pts);
  for (std::size_t k = 0; k < pts.size(); ++k)
    for (std::int64_t n = 0; n <= 14; ++n) {
      const auto& g = pts[k];
      REQUIRE(seq[k][static_cast<std::size_t>(n)] == Rational(count(n - g.y, g.y, g.z)));
      if (n > 0) CHECK(seq[k][static_cast<std::size_t>(n)] >= seq[k][static_cast<std::size_t>(n - 1)]);
    }
  CHECK_THROWS_AS(iterate_seed(sw, psi0, 30, {0, 5, 30}, 100), BudgetExceeded);
}

TEST_CASE("commuting subgroups") {
  const CommutingSubgroup h0({inverse(gen_a())}, {1});
  CHECK(h0.contains({3, 0, 0}));
  CHECK(h0.contains({-7, 0, 0}));
  CHECK_FALSE(h0.contains({0, 1, 0}));
  CHECK_FALSE(h0.contains({1, 0, 1}));
  const CommutingSubgroup diag({{2, 2, 0}, power(gen_c(), 3)}, {q(1, 4), 5});
  // (2,2,0)^2 = (4,4,4), so (4,4,10) = (2,2,0)^2 c^6
  CHECK(diag.character_at({4, 4, 10}) == std::optional<Rational>(q(25, 16)));
  CHECK_FALSE(diag.contains({4, 4, 8}));
  CHECK(diag.character_at({2, 2, 0}) == std::optional<Rational>(q(1, 4)));
  CHECK_FALSE(diag.contains({1, 1, 0}));
  CHECK_FALSE(diag.contains({2, 2, 1}));
  CHECK_THROWS_AS(CommutingSubgroup({gen_a(), gen_b()}, {1, 1}), std::domain_error);
  CHECK_THROWS_AS(CommutingSubgroup({gen_a(), power(gen_a(), 2)}, {2, 3}), std::domain_error);
  const auto seed = Function::seed(h0);
  CHECK(seed({5, 0, 0}) == 1);
  CHECK(seed({5, 1, 0}) == 0);
}

TEST_CASE("induced functions") {
  const auto sw = Measure::southwest();
  std::vector<GroupElement> pts{{0, 0, 0}, {1, 2, 1}, {3, 3, 4}, {-2, 2, 3}, {0, 4, 6}};
  const auto h0 = induced_function(sw, {inverse(gen_a())}, {1}, 24, default_divergence_bound(), pts);
  CHECK(h0.status == InducedStatus::converged);
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK(h0.values()[k] == Function::h0()(pts[k]));

  const auto h1 = induced_function(sw, {inverse(gen_b())}, {1}, 24, default_divergence_bound(), pts);
  CHECK(h1.status == InducedStatus::converged);
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK(h1.values()[k] == Function::h1()(pts[k]));

  const auto swp = Measure::southwest_probability();
  const auto damped = induced_function(swp, {inverse(gen_a())}, {2}, 24, default_divergence_bound(), pts);
  for (std::size_t k = 0; k < pts.size(); ++k)
    CHECK(damped.values()[k] == pow(q(1, 2), pts[k].x + pts[k].y) * Function::h0()(pts[k]));

  const auto slow = induced_function(sw, {inverse(gen_a())}, {1}, 5, default_divergence_bound(), {{0, 2, 3}});
  CHECK(slow.status == InducedStatus::increasing);
  const auto big = induced_function(sw, {inverse(gen_a())}, {1}, 20, Rational(5), {{0, 4, 6}});
  CHECK(big.status == InducedStatus::diverged);

  CHECK_THROWS_AS(induced_function(sw, {gen_a()}, {1}, 4, 100, pts), std::domain_error);
  CHECK_THROWS_AS(induced_function(sw, {inverse(gen_a())}, {2}, 4, 100, pts), std::domain_error);
  CHECK_THROWS_AS(induced_function(sw, {inverse(gen_a()), inverse(gen_b())}, {1, 1}, 4, 100, pts),
                  std::domain_error);
  CHECK(to_string(InducedStatus::converged) == "converged");
}

TEST_CASE("degree sums") {
  const auto r = degree_sum_identity(Function::character(2, 2), identity(), 3);
  CHECK(r.lhs == 1);
  CHECK(r.rhs == 1);
  const auto h = degree_sum_identity(Function::h0(), identity(), 5);
  CHECK(h.lhs == 1);
  CHECK(h.rhs == 1);
  const auto t = degree_sum_identity(Function::h0(), {1, 2, 1}, 8);
  CHECK(t.lhs == 1);
  CHECK(t.rhs == t.lhs);
  CHECK(t.touched_max_defect == 0);
  // a non-harmonic function breaks it
  const auto bad = degree_sum_identity(Function::character(2, 3), identity(), 4);
  CHECK(bad.lhs != bad.rhs);
}

TEST_CASE("coset boundary sums") {
  const auto chi = Function::character(2, 2);
  // A = 0, n = 2: the points (x, 2-x, 0) and (x, 2-x, x(2-x)); (1,1,0) and (1,1,1) are both present
  Rational expected = 0;
  for (std::int64_t x = 0; x <= 2; ++x) {
    std::set<std::int64_t> zs{0, x * (2 - x)};
    for (auto z : zs) expected += Rational(count(x, 2 - x, z)) * chi(inverse(GroupElement{x, 2 - x, z}));
  }
  CHECK(coset_boundary_sum(chi, identity(), 2, 0) == expected);
  CHECK(expected == 1);
  for (std::int64_t n : {3, 6, 9}) {
    CHECK(coset_boundary_sum(chi, identity(), n, n * n) == 1);
    CHECK(coset_boundary_sum(Function::h0(), {1, 2, 1}, n, n * n) == Function::h0()({1, 2, 1}));
  }
}

TEST_CASE("function tags") {
  CHECK(parse_function("h0").tag() == "h0");
  CHECK(parse_function("char:2/2")({1, 1, 0}) == q(1, 4) * 16);
  CHECK(parse_function("char:3,3/2")({1, 1, 0}) == q(9, 2));
  CHECK(parse_function("translate:h0:1,2,1")(identity()) == Function::h0()({1, 2, 1}));
  CHECK(parse_function("scale:h0:3/2")({0, 2, 4}) == q(9, 2));
  const auto mix = parse_function("sum:h0+scale:char:2/2:2");
  CHECK(mix({0, 0, 0}) == 3);
  CHECK(harmonic_residual(Measure::southwest(), mix, Box::symmetric(4, 4, 8)).harmonic());
  CHECK(parse_function("prod:char:2/2*char:1/2,1/2")({3, 3, 3}) == 1);
  CHECK(parse_function("p")({5, 4, 12}) == 11);
  CHECK(parse_function("delta_e")(identity()) == 1);
  CHECK(parse_function("psi1")({0, 4, 0}) == 1);
  CHECK_THROWS_AS(parse_function("h2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_function("char:0/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_function("scale:h0:-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_function("translate:h0:1,2"), std::invalid_argument);
}

TEST_CASE("center product search") {
  const auto one = Rational(1);
  const Measure four({{gen_a(), one}, {gen_b(), one}, {inverse(gen_a()), one}, {inverse(gen_b()), one}});
  const auto hit = center_product_condition(four, 4);
  CHECK(hit.found);
  CHECK_FALSE(is_central(hit.first));
  CHECK_FALSE(is_central(hit.second));
  CHECK(is_central(hit.first * hit.second));
  CHECK(hit.first * hit.second != identity());

  const auto sw = center_product_condition(Measure::southwest(), 8);
  CHECK_FALSE(sw.found);
  CHECK(sw.depth == 8);

  // exhaustive oracle on a few supports
  const std::vector<std::vector<GroupElement>> supports{
      {gen_a(), {-1, -1, 1}}, {gen_a(), gen_b(), {-1, -1, 0}}, {gen_a(), gen_b()}, {{1, 1, 0}, {-1, -1, 5}, gen_c()}};
  for (const auto& support : supports) {
    std::vector<Measure::Atom> atoms;
    for (const auto& s : support) atoms.push_back({s, one});
    const Measure mu(atoms);
    std::set<GroupElement> elems, frontier{identity()};
    for (int d = 1; d <= 4; ++d) {
      std::set<GroupElement> next;
      for (const auto& g : frontier)
        for (const auto& s : support) next.insert(g * s);
      elems.insert(next.begin(), next.end());
      frontier = next;
    }
    bool found = false;
    for (const auto& g : elems)
      for (const auto& h : elems)
        if (!is_central(g) && !is_central(h) && is_central(g * h) && g * h != identity()) found = true;
    const auto r = center_product_condition(mu, 4);
    CHECK(r.found == found);
    CHECK(r.semigroup_elements == elems.size());
  }
}
