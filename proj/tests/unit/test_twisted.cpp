#include <algorithm>
#include <vector>

#include "coxtwist/twisted.hpp"
#include "doctest.h"

using namespace coxtwist;

namespace {

struct Fixture {
  SystemSpec spec;
  DiagramAutomorphism theta;
  GroupTable group;
  TwistedTable twisted;

  explicit Fixture(const std::string& json)
      : spec(parse_system_spec(json)),
        theta(validate_automorphism(spec.matrix, spec.theta)),
        group(build_group(spec.matrix)),
        twisted(enumerate_twisted(group, theta)) {}
};

const char* kA2 = R"({"generators": ["s1", "s2"], "matrix": [[1, 3], [3, 1]]})";
const char* kA3Flip = R"({
  "generators": ["s1", "s2", "s3"],
  "matrix": [[1, 3, 2], [3, 1, 3], [2, 3, 1]],
  "automorphism": {"s1": "s3", "s3": "s1"}
})";

}  // namespace

TEST_CASE("automorphism validation") {
  CoxeterMatrix cm = parse_system(kA2);
  CHECK(validate_automorphism(cm, {0, 1}).is_identity());
  CHECK_FALSE(validate_automorphism(cm, {1, 0}).is_identity());
  CHECK_THROWS_AS(validate_automorphism(cm, {0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_automorphism(cm, {0, 0}), std::invalid_argument);

  // Swapping two adjacent nodes of an asymmetric path changes the matrix.
  CoxeterMatrix b3 = make_coxeter_matrix({"s1", "s2", "s3"}, {{1, 4, 2}, {4, 1, 3}, {2, 3, 1}});
  CHECK_THROWS_AS(validate_automorphism(b3, {1, 0, 2}), std::invalid_argument);
}

TEST_CASE("underline action on the smallest nontrivial system") {
  Fixture fx(kA2);
  const GroupTable& g = fx.group;
  REQUIRE(fx.twisted.size() == 4);

  ElementRef e = g.identity();
  ElementRef s1 = g.mult(e, 0, Side::right);
  ElementRef s2 = g.mult(e, 1, Side::right);
  ElementRef w0 = g.longest();

  // From e both moves are plain right multiplications.
  CHECK(underline_act(g, fx.theta, e, 0) == s1);
  CHECK(underline_act(g, fx.theta, e, 1) == s2);
  // From s1, multiplying by s2 lands on a non-involution, so the twisted
  // conjugate is taken instead.
  CHECK(underline_act(g, fx.theta, s1, 1) == w0);
  CHECK(underline_act(g, fx.theta, w0, 0) == s2);
  CHECK(underline_act(g, fx.theta, s1, 0) == e);

  // Non-members are rejected in strict mode only.
  ElementRef s1s2 = g.mult(s1, 1, Side::right);
  CHECK_THROWS_AS(underline_act(g, fx.theta, s1s2, 0, true), std::invalid_argument);
  CHECK_NOTHROW(underline_act(g, fx.theta, s1s2, 0, false));
}

TEST_CASE("orbit enumeration matches the direct filter") {
  for (const char* json : {kA2, kA3Flip}) {
    Fixture fx(json);
    auto brute = brute_force_twisted(fx.group, fx.theta);
    REQUIRE(fx.twisted.size() == brute.size());
    std::vector<std::uint32_t> got;
    for (std::uint32_t m = 0; m < fx.twisted.size(); ++m)
      got.push_back(fx.twisted.element(m).idx);
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < brute.size(); ++i) CHECK(got[i] == brute[i].idx);
  }
}

TEST_CASE("member table round trips") {
  Fixture fx(kA2);
  const TwistedTable& t = fx.twisted;
  CHECK(t.element(0) == fx.group.identity());
  CHECK(t.member_of(fx.group.identity()) == 0);
  CHECK(t.member_of(fx.group.mult(fx.group.identity(), 0, Side::right)) >= 0);
  CHECK(t.member_of(fx.group.evaluate_word(std::vector<int>{0, 1})) == -1);
  CHECK(t.top() == 3);
  CHECK(t.rho(t.top()) == 2);

  for (std::uint32_t m = 0; m < t.size(); ++m) {
    const auto& word = t.underline_word(m);
    CHECK(static_cast<int>(word.size()) == t.rho(m));
    CHECK(t.evaluate_underline(word) == m);
  }
}

TEST_CASE("twisted descents coincide with ordinary right descents") {
  Fixture fx(kA3Flip);
  const TwistedTable& t = fx.twisted;
  for (std::uint32_t m = 0; m < t.size(); ++m)
    for (int s = 0; s < fx.group.rank(); ++s)
      CHECK(t.twisted_descent(m, s) == fx.group.has_descent(t.element(m), s, Side::right));
}

TEST_CASE("exchange property witnesses") {
  Fixture fx(kA2);
  const TwistedTable& t = fx.twisted;

  // s1.s2 is a reduced underline word for the top member.
  std::vector<int> word{0, 1};
  REQUIRE(t.evaluate_underline(word) == t.top());

  auto res = twisted_exchange_check(t, word, 0);
  CHECK(res.lowered);
  CHECK(res.drop_index == 0);

  auto other = twisted_exchange_check(t, word, 1);
  CHECK(other.lowered);
  CHECK(other.drop_index == 1);

  CHECK_THROWS_AS(twisted_exchange_check(t, std::vector<int>{0, 0}, 1), std::invalid_argument);
}

TEST_CASE("action graph structure") {
  Fixture fx(kA2);
  GThetaGraph graph = g_theta_graph(fx.twisted);
  REQUIRE(graph.vertices == 4);
  std::vector<LabelledEdge> expect{{0, 1, 0}, {0, 2, 1}, {1, 3, 1}, {2, 3, 0}};
  CHECK(graph.edges == expect);
}

TEST_CASE("orders on the twisted involutions") {
  Fixture fx(kA2);
  FinitePoset br = bruhat_poset_twisted(fx.twisted);
  FinitePoset wk = weak_poset_twisted(fx.twisted);
  REQUIRE(br.size() == 4);
  CHECK(br.rank_of(0) == 0);
  CHECK(br.rank_of(3) == 2);
  CHECK(br.eulerian_report().ok());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (wk.leq(a, b)) CHECK(br.leq(a, b));
    }
  // The diamond: both middle members are incomparable.
  CHECK_FALSE(br.leq(1, 2));
  CHECK_FALSE(br.leq(2, 1));
}

TEST_CASE("descent matchings on intervals") {
  Fixture fx(kA2);
  FinitePoset br = bruhat_poset_twisted(fx.twisted);
  IntervalMatching im = matching_from_generator(fx.twisted, br, fx.twisted.top(), 0);
  REQUIRE(im.members.size() == 4);
  CHECK(verify_special_matching(im.interval, im.matching).ok);
  CHECK_THROWS_AS(matching_from_generator(fx.twisted, br, 0, 0), std::invalid_argument);
}
