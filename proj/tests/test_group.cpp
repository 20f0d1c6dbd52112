#include <doctest.h>

#include <random>
#include <sstream>

#include "heis/group.hpp"
#include "oracles.hpp"

using namespace heis;

namespace {

GroupElement random_element(std::mt19937_64& gen) {
  std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
  return {d(gen), d(gen), d(gen)};
}

}  // namespace

TEST_CASE("group law on the generators") {
  CHECK(multiply(gen_a(), gen_b()) == GroupElement{1, 1, 1});
  CHECK(multiply(gen_b(), gen_a()) == GroupElement{1, 1, 0});
  CHECK(gen_a() * gen_b() == GroupElement{1, 1, 1});
  // commutator a b a^-1 b^-1
  const auto c = gen_a() * gen_b() * inverse(gen_a()) * inverse(gen_b());
  CHECK(c == gen_c());
}

TEST_CASE("inverse examples") {
  CHECK(inverse(gen_a()) == GroupElement{-1, 0, 0});
  CHECK(inverse(GroupElement{1, 1, 1}) == GroupElement{-1, -1, 0});
  CHECK(inverse(GroupElement{5, 4, 12}) == GroupElement{-5, -4, 8});
  CHECK(multiply(GroupElement{5, 4, 12}, GroupElement{-5, -4, 8}) == identity());
}

TEST_CASE("group axioms on random triples") {
  std::mt19937_64 gen(12345);
  for (int i = 0; i < 2000; ++i) {
    const auto g = random_element(gen), h = random_element(gen), k = random_element(gen);
    CHECK((g * h) * k == g * (h * k));
    CHECK(g * identity() == g);
    CHECK(identity() * g == g);
    CHECK(g * inverse(g) == identity());
    CHECK(inverse(g) * g == identity());
    CHECK(gen_c() * g == g * gen_c());
    CHECK(commute(g, h) == (g * h == h * g));
  }
}

TEST_CASE("power matches repeated multiplication") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_element(gen);
    GroupElement acc = identity();
    for (std::int64_t k = 0; k <= 12; ++k) {
      CHECK(power(g, k) == acc);
      CHECK(power(g, -k) == inverse(acc));
      acc = acc * g;
    }
  }
}

TEST_CASE("checked arithmetic refuses to wrap") {
  const GroupElement big{std::int64_t{1} << 40, std::int64_t{1} << 40, 0};
  CHECK_THROWS_AS(multiply(big, big), std::overflow_error);
  CHECK_THROWS_AS(power(big, std::int64_t{1} << 30), std::overflow_error);
}

TEST_CASE("evaluate agrees with an inline fold") {
  CHECK(evaluate(Word("")) == identity());
  CHECK(evaluate(Word("ab")) == GroupElement{1, 1, 1});
  CHECK(evaluate(Word("ababaabab")) == GroupElement{5, 4, 12});
  for (int n = 0; n <= 12; ++n)
    for (const auto& letters : oracle::words_of_length(n)) {
      const Word w(letters);
      const auto [x, y, z] = oracle::fold(letters);
      const auto g = evaluate(w);
      REQUIRE(g == GroupElement{x, y, z});
      CHECK(in_positive_semigroup(g));
      CHECK(w.length() == w.count_a() + w.count_b());
      CHECK(sigma(g) == evaluate(letter_swap(w)));
      CHECK(degree(g) == n);
    }
}

TEST_CASE("positive semigroup is the image of the words") {
  CHECK(in_positive_semigroup({5, 4, 12}));
  CHECK_FALSE(in_positive_semigroup({1, 1, 2}));
  CHECK(in_positive_semigroup({2, 3, 6}));
  for (int n = 0; n <= 8; ++n) {
    const auto fibers = oracle::fibers_of_length(n);
    for (std::int64_t x = -1; x <= n + 1; ++x)
      for (std::int64_t z = -2; z <= 20; ++z) {
        const std::int64_t y = n - x;
        CHECK(in_positive_semigroup({x, y, z}) == (fibers.count({x, y, z}) == 1));
      }
  }
}

TEST_CASE("sigma") {
  CHECK(sigma({1, 1, 1}) == GroupElement{1, 1, 0});
  CHECK(sigma({5, 4, 12}) == GroupElement{4, 5, 8});
  CHECK(sigma({7, 0, 0}) == GroupElement{0, 7, 0});
  CHECK(sigma(sigma({5, 4, 12})) == GroupElement{5, 4, 12});
  CHECK_THROWS_AS(sigma({1, 1, 2}), std::domain_error);
  CHECK(evaluate(letter_swap(Word("ababaabab"))) == GroupElement{4, 5, 8});
}

TEST_CASE("degree and centrality") {
  CHECK(degree({5, 4, 12}) == 9);
  CHECK(degree(identity()) == 0);
  CHECK(degree({-2, 3, 0}) == 1);
  CHECK(is_central(gen_c()));
  CHECK(is_central(identity()));
  CHECK_FALSE(is_central(gen_a()));
}

TEST_CASE("words") {
  CHECK_THROWS_AS(Word("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Word("A"), std::invalid_argument);
  const auto all = all_words(3);
  REQUIRE(all.size() == 8);
  CHECK(all.front().letters() == "aaa");
  CHECK(all.back().letters() == "bbb");
  CHECK(std::is_sorted(all.begin(), all.end()));
  std::ostringstream os;
  os << Word("abba");
  CHECK(os.str() == "abba");
}

TEST_CASE("text and json forms") {
  CHECK(parse_element("5,4,12") == GroupElement{5, 4, 12});
  CHECK(parse_element(" -1 , 2,-3 ") == GroupElement{-1, 2, -3});
  CHECK_THROWS_AS(parse_element("1,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_element("1,2,x"), std::invalid_argument);
  nlohmann::json j = GroupElement{5, 4, 12};
  CHECK(j.dump() == "[5,4,12]");
  CHECK(j.get<GroupElement>() == GroupElement{5, 4, 12});
  CHECK(to_string(GroupElement{1, -2, 3}) == "(1,-2,3)");
}
