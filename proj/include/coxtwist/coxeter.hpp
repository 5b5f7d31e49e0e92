#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coxtwist/common.hpp"
#include "coxtwist/poset.hpp"

namespace coxtwist {

// Symmetric matrix of pairwise orders: m(s,s) = 1, m(s,t) >= 2 for s != t.
// Only finite labels are supported; infinite groups are rejected at build time
// when the root system fails to close.
struct CoxeterMatrix {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> entries;

  int rank() const { return static_cast<int>(generators.size()); }
  int order_of(int i, int j) const { return entries[i][j]; }
  int generator_index(const std::string& name) const;  // -1 when absent
};

// Validates names (nonempty, distinct) and matrix shape/symmetry/labels.
CoxeterMatrix make_coxeter_matrix(std::vector<std::string> generators,
                                  std::vector<std::vector<int>> entries);

// A parsed system document: the matrix plus the generator permutation from the
// optional "automorphism" field (identity when the field is absent).  The
// permutation is only name-resolved here; validate_automorphism checks the math.
struct SystemSpec {
  CoxeterMatrix matrix;
  std::vector<int> theta;
};

// Accepts exactly {"generators", "matrix"} plus optional "automorphism";
// any unknown field is an error, as is any malformed value.
SystemSpec parse_system_spec(const std::string& text);
CoxeterMatrix parse_system(const std::string& text);

struct ElementRef {
  std::uint32_t idx = 0;
  friend constexpr auto operator<=>(ElementRef, ElementRef) = default;
};

struct BuildCaps {
  std::uint32_t element_cap = 100000;
  std::uint32_t root_cap = 1000;
};

// Complete multiplication/length/descent tables for one finite group, built by
// build_group.  Elements are dense indices in BFS order from the identity, so
// index 0 is e and stored reduced words are lexicographically least.
// Immutable after construction; bruhat_leq keeps an internal mutex-guarded
// memo and is safe to call concurrently.  Move-only.
class GroupTable {
 public:
  GroupTable(GroupTable&&) noexcept;
  GroupTable& operator=(GroupTable&&) noexcept;
  ~GroupTable();

  std::uint32_t order() const { return order_; }
  int rank() const { return matrix_.rank(); }
  int root_count() const { return root_count_; }
  const CoxeterMatrix& matrix() const { return matrix_; }

  ElementRef identity() const { return {0}; }
  ElementRef longest() const { return longest_; }
  int length(ElementRef w) const;
  ElementRef mult(ElementRef w, int s, Side side) const;
  ElementRef inverse(ElementRef w) const;
  const std::vector<int>& reduced_word(ElementRef w) const;

  GenSet descent_set(ElementRef w, Side side) const;
  bool has_descent(ElementRef w, int s, Side side) const;
  std::vector<int> descents(ElementRef w, Side side) const;

  ElementRef evaluate_word(std::span<const int> word) const;
  // (element, stored reduced word).  Output length matches input parity.
  std::pair<ElementRef, std::vector<int>> reduce_word(std::span<const int> word) const;

  bool bruhat_leq(ElementRef v, ElementRef w) const;

  FinitePoset bruhat_poset() const;
  FinitePoset two_sided_weak_poset() const;

  // Image of the 2*root_count signed roots; indices [0, root_count) are the
  // positive roots with the simple ones first, negative root i is root_count+i.
  const std::vector<std::uint32_t>& root_perm(ElementRef w) const;

  // Generator names of the stored reduced word joined with '.', "e" for the identity.
  std::string word_label(ElementRef w) const;

 private:
  GroupTable() = default;
  friend GroupTable build_group(const CoxeterMatrix&, const BuildCaps&);

  void check_ref(ElementRef w) const;
  bool bruhat_leq_unlocked(std::uint32_t v, std::uint32_t w) const;

  CoxeterMatrix matrix_;
  std::uint32_t order_ = 0;
  int root_count_ = 0;
  ElementRef longest_{0};
  std::vector<std::vector<std::uint32_t>> perms_;
  std::vector<int> length_;
  std::vector<std::vector<int>> words_;
  std::vector<std::uint32_t> right_mult_;  // order_ x rank
  std::vector<std::uint32_t> left_mult_;
  std::vector<std::uint32_t> inverse_;
  std::vector<GenSet> rdesc_, ldesc_;

  struct BruhatCache;
  std::unique_ptr<BruhatCache> bruhat_cache_;
};

// Bootstraps the root system numerically in simple-root coordinates, freezes the
// generators as exact permutations of the signed roots, certifies the defining
// relations on those permutations, then enumerates the group by BFS.
// Throws CapExceeded when the root closure or element count exceeds the caps
// (the signal for infinite or too-large input).
GroupTable build_group(const CoxeterMatrix& cm, const BuildCaps& caps = {});

}  // namespace coxtwist
