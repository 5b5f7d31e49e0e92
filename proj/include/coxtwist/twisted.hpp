#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coxtwist/common.hpp"
#include "coxtwist/coxeter.hpp"
#include "coxtwist/poset.hpp"

namespace coxtwist {

// Generator permutation preserving the matrix: an involution with
// m(theta s, theta t) = m(s, t).
struct DiagramAutomorphism {
  std::vector<int> perm;

  int apply(int s) const { return perm[s]; }
  bool is_identity() const;
};

DiagramAutomorphism validate_automorphism(const CoxeterMatrix& cm, std::vector<int> perm);

// Letterwise image of w under the diagram automorphism.
ElementRef apply_automorphism(const GroupTable& g, const DiagramAutomorphism& theta, ElementRef w);

// Whether theta(w) = w^-1.
bool is_twisted_involution(const GroupTable& g, const DiagramAutomorphism& theta, ElementRef w);

// One right step of the underline action:
//   w * s = ws             when l(theta(s) w s) = l(w),
//   w * s = theta(s) w s   otherwise.
// The set of twisted involutions is closed under this.  strict verifies the
// precondition theta(w) = w^-1 (on by default at API boundaries; enumeration
// loops pass false).
ElementRef underline_act(const GroupTable& g, const DiagramAutomorphism& theta, ElementRef w,
                         int s, bool strict = true);

// Filter scan of the whole group; the oracle enumerate_twisted is tested against.
std::vector<ElementRef> brute_force_twisted(const GroupTable& g, const DiagramAutomorphism& theta);

// Orbit of the identity under the underline action, found by BFS expanding
// generators in index order.  Member indices are BFS order, so member 0 is e,
// rho is the BFS depth (minimal underline-expression length) and stored
// underline words are lexicographically least.
// Holds a pointer to the GroupTable; keep it alive and in place.
class TwistedTable {
 public:
  const GroupTable& group() const { return *group_; }
  const DiagramAutomorphism& automorphism() const { return theta_; }

  std::uint32_t size() const { return static_cast<std::uint32_t>(members_.size()); }
  ElementRef element(std::uint32_t member) const;
  int member_of(ElementRef w) const;  // -1 when w is not a twisted involution
  int rho(std::uint32_t member) const;
  const std::vector<int>& underline_word(std::uint32_t member) const;

  std::uint32_t act(std::uint32_t member, int s) const;
  std::uint32_t evaluate_underline(std::span<const int> word) const;  // from e

  // s lowers rho exactly when s is an ordinary right descent of the element.
  bool twisted_descent(std::uint32_t member, int s) const;
  GenSet twisted_descent_set(std::uint32_t member) const;

  // Member index of the unique rho-maximal element (the longest element).
  std::uint32_t top() const;

 private:
  friend TwistedTable enumerate_twisted(const GroupTable&, const DiagramAutomorphism&);

  const GroupTable* group_ = nullptr;
  DiagramAutomorphism theta_;
  std::vector<ElementRef> members_;
  std::vector<int> rho_;
  std::vector<std::vector<int>> words_;
  std::vector<std::uint32_t> act_;  // size() x rank
  std::vector<std::int32_t> member_of_;
};

TwistedTable enumerate_twisted(const GroupTable& g, const DiagramAutomorphism& theta);

// Exchange check for underline expressions: given a reduced underline word and a
// generator s, reports whether appending s lowers rho, and if so one index whose
// deletion from the word yields the product.  Witness absence would falsify the
// build and raises InternalError.
struct ExchangeResult {
  bool lowered = false;
  int drop_index = -1;  // 0-based position in the input word
};
ExchangeResult twisted_exchange_check(const TwistedTable& t, std::span<const int> word, int s);

// Order induced on the twisted involutions by the group's Bruhat order, graded
// by rho (gradedness is asserted).  Element i of the poset is member i.
FinitePoset bruhat_poset_twisted(const TwistedTable& t);

// Transitive closure of the rho-increasing underline steps, graded by rho.
// The identity map into bruhat_poset_twisted is order-preserving (asserted).
FinitePoset weak_poset_twisted(const TwistedTable& t);

struct LabelledEdge {
  std::uint32_t u = 0, v = 0;  // member indices, u < v
  int label = 0;
  friend constexpr auto operator<=>(const LabelledEdge&, const LabelledEdge&) = default;
};

// The action graph: vertices are members, one edge {w, w*s} per generator s
// (the action is fixed-point-free, so there are no loops; parallel edges with
// distinct labels may occur).
struct GThetaGraph {
  std::uint32_t vertices = 0;
  std::vector<LabelledEdge> edges;
};
GThetaGraph g_theta_graph(const TwistedTable& t);

// The map v -> v*s on the closed Bruhat interval [e, w], for s a descent of w.
// interval element i corresponds to members[i]; matching is in interval-local
// indices and satisfies the special-matching condition (verified by callers).
struct IntervalMatching {
  FinitePoset interval;
  std::vector<std::uint32_t> members;
  MatchingMap matching;
};
IntervalMatching matching_from_generator(const TwistedTable& t, const FinitePoset& bruhat,
                                         std::uint32_t w_member, int s);

}  // namespace coxtwist
