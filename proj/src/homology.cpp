#include "coxtwist/homology.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace coxtwist {

IntMatrix IntMatrix::zero(int r, int c) {
  IntMatrix m;
  m.rows = r;
  m.cols = c;
  m.data.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), BigInt(0));
  return m;
}

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

void swap_rows(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(a, c), m.at(b, c));
}

void swap_cols(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, a), m.at(r, b));
}

}  // namespace

SNFResult smith_normal_form(IntMatrix m) {
  SNFResult res;
  const int bound = std::min(m.rows, m.cols);
  int t = 0;
  while (t < bound) {
    // Smallest nonzero entry of the working submatrix becomes the pivot.
    int pr = -1, pc = -1;
    for (int r = t; r < m.rows; ++r)
      for (int c = t; c < m.cols; ++c) {
        if (m.at(r, c) == 0) continue;
        if (pr < 0 || abs_big(m.at(r, c)) < abs_big(m.at(pr, pc))) {
          pr = r;
          pc = c;
        }
      }
    if (pr < 0) break;
    swap_rows(m, t, pr);
    swap_cols(m, t, pc);
    if (m.at(t, t) < 0)
      for (int c = t; c < m.cols; ++c) m.at(t, c) = -m.at(t, c);

    bool disturbed = false;
    for (int r = t + 1; r < m.rows; ++r) {
      if (m.at(r, t) == 0) continue;
      BigInt q = m.at(r, t) / m.at(t, t);
      if (q != 0)
        for (int c = t; c < m.cols; ++c) m.at(r, c) -= q * m.at(t, c);
      if (m.at(r, t) != 0) {
        // Remainder is smaller than the pivot; restart with it.
        swap_rows(m, t, r);
        disturbed = true;
        break;
      }
    }
    if (disturbed) continue;
    for (int c = t + 1; c < m.cols; ++c) {
      if (m.at(t, c) == 0) continue;
      BigInt q = m.at(t, c) / m.at(t, t);
      if (q != 0)
        for (int r = t; r < m.rows; ++r) m.at(r, c) -= q * m.at(r, t);
      if (m.at(t, c) != 0) {
        swap_cols(m, t, c);
        disturbed = true;
        break;
      }
    }
    if (disturbed) continue;

    // Fold any non-multiple into row t so the divisibility chain holds.
    bool divides = true;
    for (int r = t + 1; r < m.rows && divides; ++r)
      for (int c = t + 1; c < m.cols && divides; ++c)
        if (m.at(r, c) % m.at(t, t) != 0) {
          for (int cc = t; cc < m.cols; ++cc) m.at(t, cc) += m.at(r, cc);
          divides = false;
        }
    if (!divides) continue;

    res.factors.push_back(m.at(t, t));
    ++t;
  }
  for (std::size_t i = 1; i < res.factors.size(); ++i)
    internal_check(res.factors[i] % res.factors[i - 1] == 0,
                   "invariant factors do not form a divisibility chain");
  return res;
}

std::vector<IntMatrix> boundary_matrices(const SimplicialComplexData& c) {
  std::vector<IntMatrix> out;
  const int dim = c.dim();
  if (dim < 1) return out;

  std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(dim) + 1);
  for (int k = 0; k <= dim; ++k) {
    int i = 0;
    for (const auto& f : c.faces[static_cast<std::size_t>(k)]) {
      if (static_cast<int>(f.size()) != k + 1)
        throw std::invalid_argument("face dimension does not match its group");
      if (!std::is_sorted(f.begin(), f.end()))
        throw std::invalid_argument("face vertex lists must be sorted");
      index[static_cast<std::size_t>(k)][f] = i++;
    }
  }

  for (int k = 1; k <= dim; ++k) {
    const auto& lower = index[static_cast<std::size_t>(k - 1)];
    IntMatrix d = IntMatrix::zero(static_cast<int>(c.faces[static_cast<std::size_t>(k - 1)].size()),
                                  static_cast<int>(c.faces[static_cast<std::size_t>(k)].size()));
    int col = 0;
    for (const auto& f : c.faces[static_cast<std::size_t>(k)]) {
      for (int j = 0; j <= k; ++j) {
        std::vector<int> sub;
        sub.reserve(f.size() - 1);
        for (int i = 0; i <= k; ++i)
          if (i != j) sub.push_back(f[i]);
        auto it = lower.find(sub);
        if (it == lower.end()) throw std::invalid_argument("complex is not closed under subsets");
        d.at(it->second, col) = (j % 2 == 0) ? 1 : -1;
      }
      ++col;
    }
    out.push_back(std::move(d));
  }

  for (std::size_t k = 1; k < out.size(); ++k) {
    const IntMatrix& a = out[k - 1];
    const IntMatrix& b = out[k];
    for (int i = 0; i < a.rows; ++i)
      for (int j = 0; j < b.cols; ++j) {
        BigInt acc = 0;
        for (int l = 0; l < a.cols; ++l) acc += a.at(i, l) * b.at(l, j);
        internal_check(acc == 0, "boundary of a boundary is nonzero");
      }
  }
  return out;
}

bool HomologyProfile::trivial() const {
  for (int b : betti)
    if (b) return false;
  for (const auto& tor : torsion)
    if (!tor.empty()) return false;
  return true;
}

bool HomologyProfile::is_sphere(int d) const {
  if (d < 0 || d >= static_cast<int>(betti.size())) return false;
  for (int k = 0; k < static_cast<int>(betti.size()); ++k)
    if (betti[static_cast<std::size_t>(k)] != (k == d ? 1 : 0)) return false;
  for (const auto& tor : torsion)
    if (!tor.empty()) return false;
  return true;
}

std::string HomologyProfile::to_text() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < betti.size(); ++k) {
    os << "H" << k << "\tbetti=" << betti[k];
    if (!torsion[k].empty()) {
      os << "\ttorsion=";
      for (std::size_t i = 0; i < torsion[k].size(); ++i) {
        if (i) os << ",";
        os << torsion[k][i];
      }
    }
    os << "\n";
  }
  return os.str();
}

HomologyProfile reduced_homology(const SimplicialComplexData& c) {
  HomologyProfile prof;
  const int dim = c.dim();
  if (dim < 0) return prof;

  auto boundaries = boundary_matrices(c);
  std::vector<int> rank(static_cast<std::size_t>(dim) + 2, 0);
  std::vector<std::vector<BigInt>> factors(static_cast<std::size_t>(dim) + 2);
  for (int k = 1; k <= dim; ++k) {
    auto snf = smith_normal_form(boundaries[static_cast<std::size_t>(k - 1)]);
    rank[static_cast<std::size_t>(k)] = snf.rank();
    factors[static_cast<std::size_t>(k)] = std::move(snf.factors);
  }

  prof.betti.assign(static_cast<std::size_t>(dim) + 1, 0);
  prof.torsion.assign(static_cast<std::size_t>(dim) + 1, {});
  for (int k = 0; k <= dim; ++k) {
    const int nk = static_cast<int>(c.face_count(k));
    // The augmentation map has rank 1 whenever there are vertices.
    const int lower = (k == 0) ? (c.vertex_count > 0 ? 1 : 0) : rank[static_cast<std::size_t>(k)];
    const int upper = (k == dim) ? 0 : rank[static_cast<std::size_t>(k) + 1];
    prof.betti[static_cast<std::size_t>(k)] = nk - lower - upper;
    internal_check(prof.betti[static_cast<std::size_t>(k)] >= 0, "negative betti number");
    if (k < dim)
      for (const auto& d : factors[static_cast<std::size_t>(k) + 1])
        if (d > 1) prof.torsion[static_cast<std::size_t>(k)].push_back(d);
  }
  return prof;
}

SphereCheck verify_sphere_interval(const FinitePoset& p, int u, int v) {
  if (!p.has_rank()) throw std::invalid_argument("sphere check requires a ranked poset");
  if (!p.less(u, v)) throw std::invalid_argument("sphere check requires u < v");
  SphereCheck res;
  const int diff = p.rank_of(v) - p.rank_of(u);
  res.expected_dim = diff - 2;
  if (diff == 1) {
    res.vacuous = true;
    res.ok = true;
    return res;
  }
  res.profile = reduced_homology(p.open_interval(u, v).order_complex());
  res.ok = res.profile.is_sphere(res.expected_dim);
  return res;
}

}  // namespace coxtwist
