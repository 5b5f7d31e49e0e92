#include <algorithm>
#include <vector>

#include "coxtwist/cells.hpp"
#include "doctest.h"

using namespace coxtwist;

namespace {

struct Fixture {
  SystemSpec spec;
  DiagramAutomorphism theta;
  GroupTable group;
  TwistedTable twisted;
  GThetaGraph graph;
  FaceComplex complex;

  explicit Fixture(const std::string& json)
      : spec(parse_system_spec(json)),
        theta(validate_automorphism(spec.matrix, spec.theta)),
        group(build_group(spec.matrix)),
        twisted(enumerate_twisted(group, theta)),
        graph(g_theta_graph(twisted)),
        complex(build_face_poset(twisted, graph)) {}
};

const char* kA1 = R"({"generators": ["s1"], "matrix": [[1]]})";
const char* kA2 = R"({"generators": ["s1", "s2"], "matrix": [[1, 3], [3, 1]]})";
const char* kA3 = R"({
  "generators": ["s1", "s2", "s3"],
  "matrix": [[1, 3, 2], [3, 1, 3], [2, 3, 1]]
})";

}  // namespace

TEST_CASE("polynomial basics") {
  Polynomial p = polynomial_from_histogram({1, 0, 2, 0, 0});
  CHECK(p.degree() == 2);
  CHECK(p.to_string() == "1 0 2");
  CHECK(p.at(1) == 0);
  CHECK(p.at(9) == 0);
  CHECK(p.eval(2) == 9);
  CHECK(polynomial_from_histogram({}).to_string() == "0");
  CHECK(polynomial_from_histogram({0, 0}).to_string() == "0");
}

TEST_CASE("rank-one complex") {
  Fixture fx(kA1);
  REQUIRE(fx.twisted.size() == 2);
  CHECK(fx.complex.cells().size() == 3);
  CHECK(fx.complex.f_polynomial().to_string() == "1 2");
  CHECK(fx.complex.h_polynomial().to_string() == "1 1");
  CHECK(descent_polynomial(fx.twisted).to_string() == "1 1");
}

TEST_CASE("cell census on the diamond") {
  Fixture fx(kA2);
  const FaceComplex& fc = fx.complex;
  REQUIRE(fc.cells().size() == 9);

  int by_dim[3] = {0, 0, 0};
  for (const Cell& cell : fc.cells()) {
    REQUIRE(cell.dim >= -1);
    REQUIRE(cell.dim <= 1);
    ++by_dim[cell.dim + 1];
    CHECK(std::is_sorted(cell.vertices.begin(), cell.vertices.end()));
    // min_elem is the unique vertex with no twisted descent inside J.
    for (std::uint32_t v : cell.vertices) {
      bool free_of_descents = (fx.twisted.twisted_descent_set(v) & cell.J) == 0;
      CHECK(free_of_descents == (v == cell.min_elem));
    }
  }
  CHECK(by_dim[0] == 1);
  CHECK(by_dim[1] == 4);
  CHECK(by_dim[2] == 4);

  CHECK(fc.f_polynomial().to_string() == "1 4 4");
  CHECK(fc.h_polynomial().to_string() == "1 2 1");
  CHECK(descent_polynomial(fx.twisted).to_string() == "1 2 1");

  // The bottom cell spans everything; each facet is one member.
  const Cell& bottom = fc.cells()[static_cast<std::size_t>(fc.bottom())];
  CHECK(bottom.dim == -1);
  CHECK(bottom.vertices.size() == 4);
  for (std::uint32_t m = 0; m < 4; ++m) {
    const Cell& facet = fc.cells()[fc.facet_cell_by_member()[m]];
    CHECK(facet.dim == 1);
    CHECK(facet.vertices == std::vector<std::uint32_t>{m});
  }
}

TEST_CASE("component minima ignore the reduction order") {
  Fixture fx(kA2);
  // J = {s1}: components {e, s1} and {s2, top}.
  CHECK(fx.complex.min_of(0, 1) == 0);
  CHECK(fx.complex.min_of(1, 1) == 0);
  CHECK(fx.complex.min_of(2, 1) == 2);
  CHECK(fx.complex.min_of(3, 1) == 2);
  // J = S: one component with minimum e.
  for (std::uint32_t m = 0; m < 4; ++m) CHECK(fx.complex.min_of(m, 3) == 0);

  Cell cell = component_cell(fx.twisted, fx.graph, 3, 3);
  CHECK(cell.min_elem == 0);
  CHECK(cell.vertices.size() == 4);
  CHECK(cell.edges.size() == 4);
}

TEST_CASE("face poset structure") {
  Fixture fx(kA2);
  const FinitePoset& p = fx.complex.poset();
  REQUIRE(p.size() == 9);
  CHECK(p.minimal_elements() == std::vector<int>{fx.complex.bottom()});
  CHECK(p.maximal_elements().size() == 4);
  CHECK(fx.complex.check_boolean_intervals().ok);
  CHECK(fx.complex.check_thin().ok);

  // Faces of one facet: itself, two codimension-1 cells, the bottom.
  const auto& faces = fx.complex.faces_of_member(3);
  CHECK(faces.size() == 4);
}

TEST_CASE("shelling verification") {
  Fixture fx(kA2);
  const FaceComplex& fc = fx.complex;

  // Weak-order extension: restriction dims follow the descent counts.
  auto rep = fc.verify_shelling({0, 1, 2, 3});
  CHECK(rep.ok);
  CHECK(rep.order_is_weak_extension);
  CHECK(rep.restriction_dims == std::vector<int>{-1, 0, 0, 1});

  // A valid shelling that is not a weak-order extension.
  auto mixed = fc.verify_shelling({0, 1, 3, 2});
  CHECK(mixed.ok);
  CHECK_FALSE(mixed.order_is_weak_extension);
  CHECK(mixed.restriction_dims == std::vector<int>{-1, 0, 0, 1});

  // Starting from the top: the second facet meets the first one only in the
  // bottom cell, whose dimension is too small.
  auto bad = fc.verify_shelling({3, 0, 1, 2});
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.violation.has_value());
  CHECK(bad.violation->step == 1);

  CHECK_THROWS_AS(fc.verify_shelling({0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(fc.verify_shelling({0, 1, 2, 2}), std::invalid_argument);
}

TEST_CASE("identity battery for small ranks") {
  for (const char* json : {kA1, kA2, kA3}) {
    Fixture fx(json);
    auto rep = check_h_identities(fx.complex, fx.twisted, 99);
    CHECK(rep.h_matches_descent);
    CHECK(rep.shelling_matches);
    CHECK(rep.palindromic);
    CHECK(rep.euler_ok);
    CHECK(rep.ok());
  }
  Fixture a3(kA3);
  CHECK(a3.complex.h_polynomial().to_string() == "1 4 4 1");
  CHECK(descent_polynomial(a3.twisted).to_string() == "1 4 4 1");
}

TEST_CASE("weak order extensions always shell") {
  Fixture fx(kA3);
  const FaceComplex& fc = fx.complex;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto ext = fc.weak_poset().linear_extension(seed);
    std::vector<std::uint32_t> order(ext.begin(), ext.end());
    auto rep = fc.verify_shelling(order);
    CHECK(rep.ok);
    CHECK(rep.order_is_weak_extension);
  }
}
