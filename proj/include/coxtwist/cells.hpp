#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxtwist/common.hpp"
#include "coxtwist/poset.hpp"
#include "coxtwist/twisted.hpp"

namespace coxtwist {

// Integer polynomial, ascending coefficients, trailing zeros trimmed.
struct Polynomial {
  std::vector<long long> coeff;

  int degree() const { return static_cast<int>(coeff.size()) - 1; }
  long long at(int i) const;
  long long eval(long long x) const;
  std::string to_string() const;  // space-separated, "0" when zero
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

Polynomial polynomial_from_histogram(const std::vector<long long>& counts);

// One cell of the complex: the connected component through min_elem of the
// subgraph of the action graph keeping only edge labels in J.  Identified by
// (J, min_elem) where min_elem is the unique component member with no twisted
// descent in J.  dim = rank - |J| - 1; J = S gives the bottom cell of dim -1,
// J = {} the facets (single vertices).
struct Cell {
  GenSet J = 0;
  std::uint32_t min_elem = 0;
  std::vector<std::uint32_t> vertices;   // member indices, ascending
  std::vector<LabelledEdge> edges;       // ascending
  int dim = -1;
};

struct BooleanCheck {
  bool ok = true;
  int a = -1, b = -1;  // first violating cell pair
  std::string detail;
};

struct ThinCheck {
  bool ok = true;
  int cell = -1;
  int facet_count = 0;
  std::string detail;
};

struct ShellingReport {
  bool ok = true;
  bool order_is_weak_extension = false;
  std::vector<int> restriction_dims;  // one entry per facet when ok, in {-1, .., rank-1}
  struct Violation {
    int step = -1;  // 0-based facet position
    int cell = -1;  // offending cell index, -1 when none applies
    std::string what;
  };
  std::optional<Violation> violation;
};

// Face poset of the cell complex, ordered by reverse inclusion of labelled
// subgraphs: bottom is the whole action graph, maximal cells are the facets
// (one per member; purity at dim rank-1 is asserted during construction).
// Holds a pointer to the TwistedTable; keep it alive and in place.
class FaceComplex {
 public:
  int gen_count() const { return rank_; }
  const TwistedTable& table() const { return *table_; }
  const std::vector<Cell>& cells() const { return cells_; }
  int cell_index(GenSet J, std::uint32_t min_elem) const;  // -1 when absent

  // Poset element i is cells()[i]; rank of a cell is rank_ - |J|.
  const FinitePoset& poset() const { return poset_; }
  int bottom() const { return bottom_; }
  const std::vector<std::uint32_t>& facet_cell_by_member() const { return facet_by_member_; }

  // Identifier of the J-component containing the member.
  std::uint32_t min_of(std::uint32_t member, GenSet J) const;

  // Cell indices of all 2^rank faces of a facet, ascending.
  const std::vector<int>& faces_of_member(std::uint32_t member) const;

  const FinitePoset& weak_poset() const { return weak_; }

  // Every closed interval of the face poset is a Boolean lattice (isomorphic to
  // the subset lattice on the label-set difference); verified against the order
  // matrix, not re-derived from the component structure.
  BooleanCheck check_boolean_intervals() const;

  // Every cell of dim rank-2 lies under exactly two facets.
  ThinCheck check_thin() const;

  // Checks the shelling conditions for the given facet order (member indices):
  // from the second facet on, the intersection with the earlier facets is
  // nonempty and pure of dim rank-2, and each step has a unique minimal new
  // cell, whose dimension is recorded.  For orders that are linear extensions
  // of the weak order, the minimal new cell is additionally required to be the
  // ascent-set cell of the step's member.
  ShellingReport verify_shelling(const std::vector<std::uint32_t>& facet_order) const;

  // f_{i-1} = number of cells of dimension i-1, as coefficient i.
  Polynomial f_polynomial() const;
  // h(x) = sum_i f_{i-1} x^i (1-x)^(rank-i), by binomial convolution.
  Polynomial h_polynomial() const;

 private:
  friend FaceComplex build_face_poset(const TwistedTable&, const GThetaGraph&);

  const TwistedTable* table_ = nullptr;
  int rank_ = 0;
  std::vector<Cell> cells_;
  FinitePoset poset_;
  int bottom_ = -1;
  std::vector<std::uint32_t> facet_by_member_;
  std::vector<std::vector<std::uint32_t>> comp_min_;  // [J][member] -> min member
  std::vector<std::vector<int>> faces_by_member_;
  std::vector<std::vector<int>> cells_by_J_;
  std::unordered_map<std::uint64_t, int> key_to_cell_;
  FinitePoset weak_;
};

FaceComplex build_face_poset(const TwistedTable& t, const GThetaGraph& graph);

// Standalone cell construction: BFS component plus greedy minimisation
// (repeatedly apply the lowest descent in J).  The greedy result is
// independent of the descent choice; build_face_poset is tested against this.
Cell component_cell(const TwistedTable& t, const GThetaGraph& graph, std::uint32_t member,
                    GenSet J);

// Counts of ordinary right-descent sets over the members.
Polynomial descent_polynomial(const TwistedTable& t);

struct HIdentityReport {
  bool h_matches_descent = false;
  bool shelling_matches = false;  // h from one sampled weak-order extension
  bool palindromic = false;
  bool euler_ok = false;          // alternating f-sum matches a (rank-1)-sphere
  Polynomial f, h, des;
  std::vector<int> restriction_dims;
  std::uint64_t seed = 0;

  bool ok() const { return h_matches_descent && shelling_matches && palindromic && euler_ok; }
  std::string summary() const;
};

HIdentityReport check_h_identities(const FaceComplex& fc, const TwistedTable& t,
                                   std::uint64_t seed);

}  // namespace coxtwist
