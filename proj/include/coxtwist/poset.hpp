#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coxtwist/common.hpp"

namespace coxtwist {

struct EulerianReport {
  enum class Status { eulerian, not_bounded, not_graded, sign_violation };
  Status status = Status::eulerian;
  int u = -1, v = -1;  // first offending interval for sign_violation
  std::string detail;
  bool ok() const { return status == Status::eulerian; }
};

// Involution pairing every element with one of its cover-neighbours.
struct MatchingMap {
  std::vector<std::uint32_t> map;
};

struct MatchingCheck {
  bool ok = true;
  int x = -1, y = -1;  // first violating pair, by element index
  std::string detail;
};

// Faces grouped by dimension; faces[k] lists sorted (k+1)-element vertex sets.
// Invariant: closed under taking subsets (boundary construction asserts this).
struct SimplicialComplexData {
  int vertex_count = 0;
  std::vector<std::vector<std::vector<int>>> faces;

  int dim() const { return static_cast<int>(faces.size()) - 1; }
  std::size_t face_count(int k) const;
  std::vector<std::vector<int>> facets() const;
};

// Finite poset with a dense order matrix.  Construction validates reflexivity,
// antisymmetry and transitivity (exhaustively up to 500 elements, sampled above),
// and, when a rank is supplied, that every cover raises it by exactly one and all
// minimal elements share a rank.  Immutable afterwards; all queries are pure.
class FinitePoset {
 public:
  FinitePoset() = default;
  FinitePoset(int n, const std::function<bool(int, int)>& leq_fn,
              std::optional<std::vector<int>> rank = std::nullopt,
              std::vector<std::string> labels = {});

  // Reachability closure of up_edges; every edge must raise rank by exactly 1,
  // which makes the closure a partial order without a separate cycle check.
  static FinitePoset from_cover_closure(int n, const std::vector<std::vector<int>>& up_edges,
                                        std::vector<int> rank,
                                        std::vector<std::string> labels = {});

  int size() const { return n_; }
  bool leq(int a, int b) const;
  bool less(int a, int b) const { return a != b && leq(a, b); }

  // covers()[x] lists the elements covering x, ascending.
  const std::vector<std::vector<int>>& covers() const { return covers_; }

  bool has_rank() const { return rank_.has_value(); }
  int rank_of(int a) const;
  const std::string& label(int a) const;
  const std::vector<std::string>& labels() const { return labels_; }

  std::vector<int> minimal_elements() const;
  std::vector<int> maximal_elements() const;

  // Elements z with u <= z <= v, ascending.  Requires leq(u, v).
  std::vector<int> interval_elements(int u, int v) const;
  FinitePoset interval(int u, int v) const;
  FinitePoset open_interval(int u, int v) const;

  long long mobius(int u, int v) const;
  EulerianReport eulerian_report() const;
  SimplicialComplexData order_complex() const;

  std::vector<int> linear_extension(std::uint64_t seed) const;
  bool is_linear_extension(const std::vector<int>& order) const;

  std::string to_dot() const;
  std::string to_text() const;

 private:
  int n_ = 0;
  int words_ = 0;                      // 64-bit blocks per row
  std::vector<std::uint64_t> up_;      // up_[a]: bitset of {b : a <= b}
  std::vector<std::uint64_t> down_;    // transpose
  std::vector<std::vector<int>> covers_;
  std::optional<std::vector<int>> rank_;
  std::vector<std::string> labels_;

  void finish(bool already_transitive);
  FinitePoset induced(const std::vector<int>& elems) const;
  bool bit(const std::vector<std::uint64_t>& rows, int a, int b) const;
};

// Checks the special-matching condition literally: m is a fixed-point-free
// involution matching every element to a cover-neighbour, and for every cover
// x <| y with m(x) != y, m(x) < m(y).  First violation reported by element index.
MatchingCheck verify_special_matching(const FinitePoset& p, const MatchingMap& m);

}  // namespace coxtwist
