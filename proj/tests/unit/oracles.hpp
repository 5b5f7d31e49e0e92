#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "coxtwist/homology.hpp"

namespace oracles {

// The symmetric group on {0..n-1} in one-line notation, enumerated directly.
// Used to cross-check the A-series group tables against textbook formulas:
// length = inversions, right descent at i iff w(i) > w(i+1).
struct SymmetricGroup {
  int n;
  std::vector<std::vector<int>> elements;

  explicit SymmetricGroup(int n) : n(n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      elements.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  static int inversions(const std::vector<int>& w) {
    int count = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j)
        if (w[i] > w[j]) ++count;
    return count;
  }

  static std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[static_cast<std::size_t>(i)]];
    return out;
  }

  static std::vector<int> invert(const std::vector<int>& w) {
    std::vector<int> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[static_cast<std::size_t>(w[i])] = static_cast<int>(i);
    return out;
  }

  static bool right_descent(const std::vector<int>& w, int s) { return w[static_cast<std::size_t>(s)] > w[static_cast<std::size_t>(s) + 1]; }

  // w * s_i swaps the entries at positions i, i+1.
  static std::vector<int> right_mult(const std::vector<int>& w, int s) {
    auto out = w;
    std::swap(out[static_cast<std::size_t>(s)], out[static_cast<std::size_t>(s) + 1]);
    return out;
  }

  int involution_count() const {
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 0);
    int count = 0;
    for (const auto& w : elements)
      if (compose(w, w) == id) ++count;
    return count;
  }

  std::vector<int> length_histogram() const {
    int max_len = n * (n - 1) / 2;
    std::vector<int> hist(static_cast<std::size_t>(max_len) + 1, 0);
    for (const auto& w : elements) ++hist[static_cast<std::size_t>(inversions(w))];
    return hist;
  }
};

// Invariant factors from gcds of k x k minors: d_k = gcd of all k-minors,
// factor k = d_k / d_{k-1}.  Exponential, only for tiny matrices.
inline coxtwist::BigInt minor_det(const coxtwist::IntMatrix& m, const std::vector<int>& rows,
                                  const std::vector<int>& cols) {
  const std::size_t k = rows.size();
  if (k == 1) return m.at(rows[0], cols[0]);
  coxtwist::BigInt det = 0;
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<int> sub_cols;
    for (std::size_t t = 0; t < k; ++t)
      if (t != j) sub_cols.push_back(cols[t]);
    coxtwist::BigInt term = m.at(rows[0], cols[j]) * minor_det(m, sub_rows, sub_cols);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

inline std::vector<coxtwist::BigInt> snf_by_minor_gcd(const coxtwist::IntMatrix& m) {
  using coxtwist::BigInt;
  std::vector<BigInt> d;  // d[k-1] = gcd of k-minors
  for (int k = 1; k <= std::min(m.rows, m.cols); ++k) {
    BigInt g = 0;
    std::vector<int> rows(static_cast<std::size_t>(k)), cols(static_cast<std::size_t>(k));
    std::vector<char> row_pick(static_cast<std::size_t>(m.rows), 0), col_pick(static_cast<std::size_t>(m.cols), 0);
    std::fill(row_pick.begin(), row_pick.begin() + k, 1);
    do {
      int ri = 0;
      for (int r = 0; r < m.rows; ++r)
        if (row_pick[static_cast<std::size_t>(r)]) rows[static_cast<std::size_t>(ri++)] = r;
      std::fill(col_pick.begin(), col_pick.end(), 0);
      std::fill(col_pick.begin(), col_pick.begin() + k, 1);
      do {
        int ci = 0;
        for (int cidx = 0; cidx < m.cols; ++cidx)
          if (col_pick[static_cast<std::size_t>(cidx)]) cols[static_cast<std::size_t>(ci++)] = cidx;
        g = boost::multiprecision::gcd(g, minor_det(m, rows, cols));
      } while (std::prev_permutation(col_pick.begin(), col_pick.end()));
    } while (std::prev_permutation(row_pick.begin(), row_pick.end()));
    if (g < 0) g = -g;
    if (g == 0) break;
    d.push_back(g);
  }
  std::vector<BigInt> factors;
  for (std::size_t k = 0; k < d.size(); ++k)
    factors.push_back(k == 0 ? d[0] : d[k] / d[k - 1]);
  return factors;
}

}  // namespace oracles
