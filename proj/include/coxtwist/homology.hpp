#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "coxtwist/common.hpp"
#include "coxtwist/poset.hpp"

namespace coxtwist {

// Exact integer arithmetic throughout; intermediate entries in elimination can
// grow far beyond any fixed width.
using BigInt = boost::multiprecision::cpp_int;

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<BigInt> data;

  static IntMatrix zero(int r, int c);
  BigInt& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  const BigInt& at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

// Invariant factors d_1 | d_2 | ... | d_k, positive; rank = k.
struct SNFResult {
  std::vector<BigInt> factors;
  int rank() const { return static_cast<int>(factors.size()); }
};

SNFResult smith_normal_form(IntMatrix m);

// boundary_matrices(c)[k-1] is the boundary from k-chains to (k-1)-chains with
// the usual alternating signs, for k = 1..dim.  Asserts the complex is closed
// under subsets and that consecutive boundaries compose to zero.
std::vector<IntMatrix> boundary_matrices(const SimplicialComplexData& c);

// Reduced integral homology.  betti[k] and torsion[k] describe H~_k for
// k = 0..dim; torsion lists the invariant factors exceeding 1.
struct HomologyProfile {
  std::vector<int> betti;
  std::vector<std::vector<BigInt>> torsion;

  bool trivial() const;
  // H~_d = Z and everything else zero, torsion-free.
  bool is_sphere(int d) const;
  std::string to_text() const;
};

HomologyProfile reduced_homology(const SimplicialComplexData& c);

// Homology of the order complex of the open interval (u, v) against the sphere
// of dimension rank(v) - rank(u) - 2.  Rank difference 1 gives an empty
// complex and counts as vacuously spherical.  Requires a ranked poset and
// less(u, v).
struct SphereCheck {
  bool ok = false;
  bool vacuous = false;
  int expected_dim = -2;
  HomologyProfile profile;
};

SphereCheck verify_sphere_interval(const FinitePoset& p, int u, int v);

}  // namespace coxtwist
