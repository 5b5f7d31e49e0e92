#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

#include "coxtwist/poset.hpp"
#include "doctest.h"

using namespace coxtwist;

namespace {

FinitePoset diamond() {
  // 0 < 1, 2 < 3
  auto leq = [](int a, int b) {
    if (a == b) return true;
    if (a == 0) return true;
    if (b == 3) return true;
    return false;
  };
  return FinitePoset(4, leq, std::vector<int>{0, 1, 1, 2});
}

FinitePoset boolean_lattice(int n) {
  auto leq = [](int a, int b) { return (a & ~b) == 0; };
  std::vector<int> rank(1u << n);
  for (std::size_t i = 0; i < rank.size(); ++i) rank[i] = std::popcount(i);
  return FinitePoset(1 << n, leq, rank);
}

}  // namespace

TEST_CASE("construction validates the order axioms") {
  auto not_reflexive = [](int a, int b) { return a < b; };
  CHECK_THROWS_AS(FinitePoset(3, not_reflexive), std::invalid_argument);

  auto not_antisym = [](int, int) { return true; };
  CHECK_THROWS_AS(FinitePoset(2, not_antisym), std::invalid_argument);

  // 0 <= 1, 1 <= 2 without 0 <= 2.
  auto not_transitive = [](int a, int b) { return a == b || (a == 0 && b == 1) || (a == 1 && b == 2); };
  CHECK_THROWS_AS(FinitePoset(3, not_transitive), std::invalid_argument);
}

TEST_CASE("rank validation") {
  auto chain = [](int a, int b) { return a <= b; };
  CHECK_NOTHROW(FinitePoset(3, chain, std::vector<int>{0, 1, 2}));
  CHECK_THROWS_AS(FinitePoset(3, chain, std::vector<int>{0, 2, 3}), std::invalid_argument);

  // Two minimal elements of different rank.
  auto two_chains = [](int a, int b) { return a == b || (a == 0 && b == 1); };
  CHECK_THROWS_AS(FinitePoset(3, two_chains, std::vector<int>{0, 1, 1}), std::invalid_argument);
}

TEST_CASE("covers and extrema on the diamond") {
  FinitePoset p = diamond();
  CHECK(p.covers()[0] == std::vector<int>{1, 2});
  CHECK(p.covers()[1] == std::vector<int>{3});
  CHECK(p.covers()[3].empty());
  CHECK(p.minimal_elements() == std::vector<int>{0});
  CHECK(p.maximal_elements() == std::vector<int>{3});
  CHECK(p.interval_elements(0, 3) == std::vector<int>{0, 1, 2, 3});
  CHECK(p.open_interval(0, 3).size() == 2);
}

TEST_CASE("mobius values") {
  FinitePoset p = diamond();
  CHECK(p.mobius(0, 0) == 1);
  CHECK(p.mobius(0, 1) == -1);
  CHECK(p.mobius(0, 3) == 1);

  auto chain = [](int a, int b) { return a <= b; };
  FinitePoset c3(3, chain, std::vector<int>{0, 1, 2});
  CHECK(c3.mobius(0, 2) == 0);
}

TEST_CASE("eulerian classification") {
  CHECK(diamond().eulerian_report().ok());
  CHECK(boolean_lattice(3).eulerian_report().ok());

  // Chain of length 2: mu(0,2) = 0 but an eulerian interval needs +1.
  auto chain = [](int a, int b) { return a <= b; };
  FinitePoset c3(3, chain, std::vector<int>{0, 1, 2});
  auto rep = c3.eulerian_report();
  CHECK(rep.status == EulerianReport::Status::sign_violation);
  CHECK(rep.u == 0);
  CHECK(rep.v == 2);

  // Pentagon: bounded but not graded.
  auto n5 = [](int a, int b) {
    if (a == b || a == 0 || b == 4) return true;
    return a == 2 && b == 3;
  };
  CHECK(FinitePoset(5, n5).eulerian_report().status == EulerianReport::Status::not_graded);

  // Two maximal elements: not bounded.
  auto vee = [](int a, int b) { return a == b || a == 0; };
  CHECK(FinitePoset(3, vee).eulerian_report().status == EulerianReport::Status::not_bounded);
}

TEST_CASE("cover closure poset") {
  FinitePoset p = FinitePoset::from_cover_closure(4, {{1, 2}, {3}, {3}, {}},
                                                  std::vector<int>{0, 1, 1, 2});
  CHECK(p.leq(0, 3));
  CHECK_FALSE(p.leq(1, 2));
  CHECK_THROWS_AS(FinitePoset::from_cover_closure(3, {{2}, {}, {}}, std::vector<int>{0, 1, 2}),
                  std::invalid_argument);
}

TEST_CASE("special matching verification") {
  FinitePoset p = diamond();
  MatchingMap good{{1, 0, 3, 2}};
  CHECK(verify_special_matching(p, good).ok);

  // 0 < 1, 0 < 2 < 3 with the same pairing: 0 is covered by 2 but the images
  // 1 and 3 are incomparable.
  FinitePoset q(4, [](int a, int b) {
    if (a == b || a == 0) return true;
    return a == 2 && b == 3;
  });
  auto bad = verify_special_matching(q, MatchingMap{{1, 0, 3, 2}});
  CHECK_FALSE(bad.ok);
  CHECK(bad.x == 0);
  CHECK(bad.y == 2);

  MatchingMap not_involution{{1, 2, 0, 3}};
  CHECK_FALSE(verify_special_matching(p, not_involution).ok);
}

TEST_CASE("order complex of a chain") {
  auto chain = [](int a, int b) { return a <= b; };
  FinitePoset c3(3, chain, std::vector<int>{0, 1, 2});
  auto complex = c3.order_complex();
  REQUIRE(complex.dim() == 2);
  CHECK(complex.face_count(0) == 3);
  CHECK(complex.face_count(1) == 3);
  CHECK(complex.face_count(2) == 1);
  CHECK(complex.facets() == std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("linear extensions are deterministic per seed") {
  FinitePoset p = boolean_lattice(3);
  auto a = p.linear_extension(7);
  auto b = p.linear_extension(7);
  CHECK(a == b);
  CHECK(p.is_linear_extension(a));

  auto bad = a;
  std::swap(bad.front(), bad.back());
  CHECK_FALSE(p.is_linear_extension(bad));
  CHECK_FALSE(p.is_linear_extension(std::vector<int>{0, 0, 1, 2, 3, 4, 5, 6}));
}

TEST_CASE("text and dot exports") {
  FinitePoset p = diamond();
  std::string text = p.to_text();
  CHECK(text.find("size=4") != std::string::npos);
  CHECK(text.find("ranked=yes") != std::string::npos);
  std::string dot = p.to_dot();
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
}
