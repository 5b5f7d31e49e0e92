#include "coxtwist/cells.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace coxtwist {

long long Polynomial::at(int i) const {
  if (i < 0 || i >= static_cast<int>(coeff.size())) return 0;
  return coeff[i];
}

long long Polynomial::eval(long long x) const {
  long long acc = 0;
  for (int i = degree(); i >= 0; --i) acc = acc * x + coeff[i];
  return acc;
}

std::string Polynomial::to_string() const {
  if (coeff.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    if (i) os << " ";
    os << coeff[i];
  }
  return os.str();
}

Polynomial polynomial_from_histogram(const std::vector<long long>& counts) {
  Polynomial p;
  p.coeff = counts;
  while (!p.coeff.empty() && p.coeff.back() == 0) p.coeff.pop_back();
  return p;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long acc = 1;
  for (int i = 0; i < k; ++i) acc = acc * (n - i) / (i + 1);
  return acc;
}

std::string cell_label(const TwistedTable& t, GenSet J, std::uint32_t min_elem) {
  const auto& names = t.group().matrix().generators;
  std::string out = "{";
  bool first = true;
  for (int s : genset_to_list(J)) {
    if (!first) out += ",";
    out += names[static_cast<std::size_t>(s)];
    first = false;
  }
  out += "}@";
  out += t.group().word_label(t.element(min_elem));
  return out;
}

}  // namespace

FaceComplex build_face_poset(const TwistedTable& t, const GThetaGraph& graph) {
  const int n = t.group().rank();
  if (n > 20) throw std::invalid_argument("too many generators for cell enumeration");
  if (graph.vertices != t.size()) throw std::invalid_argument("graph does not match the table");
  const int k = static_cast<int>(t.size());
  const GenSet full = (n == 64) ? ~GenSet{0} : ((GenSet{1} << n) - 1);

  FaceComplex fc;
  fc.table_ = &t;
  fc.rank_ = n;
  fc.comp_min_.assign(std::size_t{1} << n, {});
  fc.cells_by_J_.assign(std::size_t{1} << n, {});

  std::unordered_map<std::uint64_t, int> key_to_cell;
  auto key = [k](GenSet J, std::uint32_t m) {
    return static_cast<std::uint64_t>(J) * static_cast<std::uint64_t>(k) + m;
  };

  std::vector<Cell> cells;
  for (GenSet J = 0; J <= full; ++J) {
    UnionFind uf(k);
    for (const auto& e : graph.edges)
      if ((J >> e.label) & 1) uf.unite(static_cast<int>(e.u), static_cast<int>(e.v));

    auto& mins = fc.comp_min_[J];
    mins.assign(k, 0);
    std::vector<std::int32_t> root_min(k, -1);
    for (int m = 0; m < k; ++m) {
      if ((t.twisted_descent_set(static_cast<std::uint32_t>(m)) & J) == 0) {
        int r = uf.find(m);
        internal_check(root_min[r] < 0, "component has two descent-free members");
        root_min[r] = m;
      }
    }
    for (int m = 0; m < k; ++m) {
      int r = uf.find(m);
      internal_check(root_min[r] >= 0, "component has no descent-free member");
      mins[m] = static_cast<std::uint32_t>(root_min[r]);
    }

    for (int m = 0; m < k; ++m) {
      if (static_cast<int>(mins[m]) != m) continue;
      Cell c;
      c.J = J;
      c.min_elem = static_cast<std::uint32_t>(m);
      c.dim = n - std::popcount(J) - 1;
      for (int v = 0; v < k; ++v)
        if (mins[v] == c.min_elem) c.vertices.push_back(static_cast<std::uint32_t>(v));
      for (const auto& e : graph.edges)
        if (((J >> e.label) & 1) && mins[e.u] == c.min_elem) c.edges.push_back(e);
      cells.push_back(std::move(c));
    }
  }

  // Bottom (J = S) first, facets (J = {}) last; deterministic within a rank.
  std::sort(cells.begin(), cells.end(), [n](const Cell& a, const Cell& b) {
    int ra = n - std::popcount(a.J), rb = n - std::popcount(b.J);
    if (ra != rb) return ra < rb;
    if (a.J != b.J) return a.J < b.J;
    return a.min_elem < b.min_elem;
  });
  fc.cells_ = std::move(cells);
  const int nc = static_cast<int>(fc.cells_.size());
  for (int i = 0; i < nc; ++i) {
    key_to_cell.emplace(key(fc.cells_[i].J, fc.cells_[i].min_elem), i);
    fc.cells_by_J_[fc.cells_[i].J].push_back(i);
  }
  fc.key_to_cell_ = std::move(key_to_cell);

  internal_check(fc.cells_[0].J == full, "bottom cell is not first");
  fc.bottom_ = 0;
  internal_check(fc.cells_by_J_[full].size() == 1, "action graph is not connected");

  std::vector<int> ranks(nc);
  std::vector<std::string> labels(nc);
  for (int i = 0; i < nc; ++i) {
    ranks[i] = n - std::popcount(fc.cells_[i].J);
    labels[i] = cell_label(t, fc.cells_[i].J, fc.cells_[i].min_elem);
  }
  fc.poset_ = FinitePoset(
      nc,
      [&fc](int a, int b) {
        const Cell& ca = fc.cells_[a];
        const Cell& cb = fc.cells_[b];
        if ((cb.J & ~ca.J) != 0) return false;
        return fc.comp_min_[ca.J][cb.min_elem] == ca.min_elem;
      },
      std::move(ranks), std::move(labels));

  // Purity: the maximal cells are exactly the singleton cells, one per member.
  fc.facet_by_member_.assign(t.size(), 0);
  auto maxs = fc.poset_.maximal_elements();
  internal_check(static_cast<int>(maxs.size()) == k, "facet count differs from member count");
  for (int i : maxs) {
    internal_check(fc.cells_[i].J == 0 && fc.cells_[i].dim == n - 1,
                   "maximal cell is not a full-dimensional facet");
    fc.facet_by_member_[fc.cells_[i].min_elem] = static_cast<std::uint32_t>(i);
  }

  fc.faces_by_member_.assign(t.size(), {});
  for (int m = 0; m < k; ++m) {
    auto& faces = fc.faces_by_member_[m];
    for (GenSet J = 0; J <= full; ++J)
      faces.push_back(fc.cell_index(J, fc.comp_min_[J][m]));
    std::sort(faces.begin(), faces.end());
    for (int f : faces) internal_check(f >= 0, "facet face missing from the cell list");
  }

  fc.weak_ = weak_poset_twisted(t);
  return fc;
}

int FaceComplex::cell_index(GenSet J, std::uint32_t min_elem) const {
  auto it = key_to_cell_.find(static_cast<std::uint64_t>(J) *
                                  static_cast<std::uint64_t>(table_->size()) +
                              min_elem);
  return it == key_to_cell_.end() ? -1 : it->second;
}

std::uint32_t FaceComplex::min_of(std::uint32_t member, GenSet J) const {
  if (member >= table_->size()) throw std::invalid_argument("member index out of range");
  if (J >= comp_min_.size()) throw std::invalid_argument("label set out of range");
  return comp_min_[J][member];
}

const std::vector<int>& FaceComplex::faces_of_member(std::uint32_t member) const {
  if (member >= table_->size()) throw std::invalid_argument("member index out of range");
  return faces_by_member_[member];
}

Cell component_cell(const TwistedTable& t, const GThetaGraph& graph, std::uint32_t member,
                    GenSet J) {
  const int n = t.group().rank();
  if (member >= t.size()) throw std::invalid_argument("member index out of range");
  if (n < 64 && (J >> n) != 0) throw std::invalid_argument("label set out of range");

  // Greedy minimisation: any descent chain in J ends at the same element.
  std::uint32_t cur = member;
  for (;;) {
    GenSet d = t.twisted_descent_set(cur) & J;
    if (!d) break;
    cur = t.act(cur, std::countr_zero(d));
  }

  Cell c;
  c.J = J;
  c.min_elem = cur;
  c.dim = n - std::popcount(J) - 1;
  std::vector<char> in(t.size(), 0);
  std::vector<std::uint32_t> queue{member};
  in[member] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int s : genset_to_list(J)) {
      std::uint32_t v = t.act(queue[head], s);
      if (!in[v]) {
        in[v] = 1;
        queue.push_back(v);
      }
    }
  }
  for (std::uint32_t v = 0; v < t.size(); ++v)
    if (in[v]) c.vertices.push_back(v);
  for (const auto& e : graph.edges)
    if (((J >> e.label) & 1) && in[e.u]) c.edges.push_back(e);
  return c;
}

BooleanCheck FaceComplex::check_boolean_intervals() const {
  BooleanCheck res;
  const int nc = static_cast<int>(cells_.size());
  for (int b = 0; b < nc; ++b) {
    for (int a = 0; a < nc; ++a) {
      if (!poset_.leq(a, b)) continue;
      const GenSet ja = cells_[a].J, jb = cells_[b].J;
      const GenSet diff = ja & ~jb;
      const int kk = std::popcount(diff);

      // The expected interval: one cell per label set between jb and ja.
      std::vector<int> expected;
      GenSet sub = 0;
      for (;;) {
        GenSet J = jb | sub;
        int c = cell_index(J, comp_min_[J][cells_[b].min_elem]);
        if (c < 0 || !poset_.leq(a, c) || !poset_.leq(c, b)) {
          res.ok = false;
          res.a = a;
          res.b = b;
          res.detail = "between-cell missing from the interval";
          return res;
        }
        expected.push_back(c);
        if (sub == diff) break;
        sub = (sub - diff) & diff;  // next subset of diff
      }

      // Count the interval off the order matrix and match it.
      std::size_t count = 0;
      sub = 0;
      for (;;) {
        GenSet J = jb | sub;
        for (int z : cells_by_J_[J])
          if (poset_.leq(a, z) && poset_.leq(z, b)) ++count;
        if (sub == diff) break;
        sub = (sub - diff) & diff;
      }
      if (count != (std::size_t{1} << kk) || expected.size() != count) {
        res.ok = false;
        res.a = a;
        res.b = b;
        res.detail = "interval size is not 2^" + std::to_string(kk);
        return res;
      }

      for (int c1 : expected) {
        for (int c2 : expected) {
          bool sub_rel = (cells_[c2].J & ~cells_[c1].J) == 0;
          if (poset_.leq(c1, c2) != sub_rel) {
            res.ok = false;
            res.a = c1;
            res.b = c2;
            res.detail = "interval order does not match subset containment";
            return res;
          }
        }
      }
    }
  }
  return res;
}

ThinCheck FaceComplex::check_thin() const {
  ThinCheck res;
  const int nc = static_cast<int>(cells_.size());
  for (int c = 0; c < nc; ++c) {
    if (std::popcount(cells_[c].J) != 1) continue;
    int count = 0;
    for (std::uint32_t m = 0; m < table_->size(); ++m)
      if (poset_.leq(c, static_cast<int>(facet_by_member_[m]))) ++count;
    if (count != 2) {
      res.ok = false;
      res.cell = c;
      res.facet_count = count;
      res.detail = "codimension-1 cell not covered by exactly two facets";
      return res;
    }
  }
  return res;
}

ShellingReport FaceComplex::verify_shelling(const std::vector<std::uint32_t>& facet_order) const {
  const std::uint32_t k = table_->size();
  if (facet_order.size() != k) throw std::invalid_argument("order is not a facet permutation");
  {
    std::vector<char> seen(k, 0);
    for (std::uint32_t m : facet_order) {
      if (m >= k || seen[m]) throw std::invalid_argument("order is not a facet permutation");
      seen[m] = 1;
    }
  }

  ShellingReport rep;
  std::vector<int> as_ints(facet_order.begin(), facet_order.end());
  rep.order_is_weak_extension = weak_.is_linear_extension(as_ints);

  std::vector<char> seen_cell(cells_.size(), 0);
  for (std::uint32_t step = 0; step < k; ++step) {
    const std::uint32_t w = facet_order[step];
    const auto& faces = faces_by_member_[w];
    std::vector<int> shared, fresh;
    for (int c : faces) (seen_cell[c] ? shared : fresh).push_back(c);

    if (step > 0) {
      if (shared.empty()) {
        rep.ok = false;
        rep.violation = {static_cast<int>(step), -1, "empty intersection with earlier facets"};
        return rep;
      }
      for (int c : shared) {
        bool maximal = true;
        for (int c2 : shared)
          if (c2 != c && poset_.less(c, c2)) {
            maximal = false;
            break;
          }
        if (maximal && cells_[c].dim != rank_ - 2) {
          rep.ok = false;
          rep.violation = {static_cast<int>(step), c,
                           "intersection with earlier facets is not pure of codimension 1"};
          return rep;
        }
      }
    }

    int minimal_new = -1;
    for (int c : fresh) {
      bool minimal = true;
      for (int c2 : fresh)
        if (c2 != c && poset_.less(c2, c)) {
          minimal = false;
          break;
        }
      if (!minimal) continue;
      if (minimal_new >= 0) {
        rep.ok = false;
        rep.violation = {static_cast<int>(step), c, "minimal new cell is not unique"};
        return rep;
      }
      minimal_new = c;
    }
    internal_check(minimal_new >= 0, "facet introduced no new cell");

    if (rep.order_is_weak_extension) {
      const GenSet full = (rank_ == 64) ? ~GenSet{0} : ((GenSet{1} << rank_) - 1);
      GenSet desc = table_->twisted_descent_set(w);
      GenSet asc = full & ~desc;
      int expected = cell_index(asc, comp_min_[asc][w]);
      if (minimal_new != expected || cells_[minimal_new].dim != std::popcount(desc) - 1) {
        rep.ok = false;
        rep.violation = {static_cast<int>(step), minimal_new,
                         "minimal new cell is not the ascent-set cell"};
        return rep;
      }
    }

    rep.restriction_dims.push_back(cells_[minimal_new].dim);
    for (int c : fresh) seen_cell[c] = 1;
  }
  return rep;
}

Polynomial FaceComplex::f_polynomial() const {
  std::vector<long long> counts(static_cast<std::size_t>(rank_) + 1, 0);
  for (const auto& c : cells_) ++counts[static_cast<std::size_t>(c.dim + 1)];
  return polynomial_from_histogram(counts);
}

Polynomial FaceComplex::h_polynomial() const {
  Polynomial f = f_polynomial();
  std::vector<long long> h(static_cast<std::size_t>(rank_) + 1, 0);
  for (int i = 0; i <= rank_; ++i) {
    const long long fi = f.at(i);
    if (!fi) continue;
    for (int t = 0; t + i <= rank_; ++t) {
      long long sign = (t % 2 == 0) ? 1 : -1;
      h[static_cast<std::size_t>(i + t)] += fi * sign * binomial(rank_ - i, t);
    }
  }
  return polynomial_from_histogram(h);
}

Polynomial descent_polynomial(const TwistedTable& t) {
  std::vector<long long> counts(static_cast<std::size_t>(t.group().rank()) + 1, 0);
  for (std::uint32_t m = 0; m < t.size(); ++m)
    ++counts[static_cast<std::size_t>(
        std::popcount(t.group().descent_set(t.element(m), Side::right)))];
  return polynomial_from_histogram(counts);
}

std::string HIdentityReport::summary() const {
  std::ostringstream os;
  os << "h=des:" << (h_matches_descent ? "ok" : "FAIL")
     << " shelling:" << (shelling_matches ? "ok" : "FAIL")
     << " palindrome:" << (palindromic ? "ok" : "FAIL")
     << " euler:" << (euler_ok ? "ok" : "FAIL");
  return os.str();
}

HIdentityReport check_h_identities(const FaceComplex& fc, const TwistedTable& t,
                                   std::uint64_t seed) {
  HIdentityReport rep;
  rep.seed = seed;
  rep.f = fc.f_polynomial();
  rep.h = fc.h_polynomial();
  rep.des = descent_polynomial(t);
  const int n = fc.gen_count();

  rep.h_matches_descent = rep.h == rep.des;

  auto ext = fc.weak_poset().linear_extension(seed);
  std::vector<std::uint32_t> order(ext.begin(), ext.end());
  auto shell = fc.verify_shelling(order);
  if (shell.ok && shell.order_is_weak_extension) {
    std::vector<long long> counts(static_cast<std::size_t>(n) + 1, 0);
    for (int r : shell.restriction_dims) ++counts[static_cast<std::size_t>(r + 1)];
    rep.shelling_matches = polynomial_from_histogram(counts) == rep.h;
    rep.restriction_dims = std::move(shell.restriction_dims);
  }

  rep.palindromic = true;
  for (int i = 0; i <= n; ++i)
    if (rep.h.at(i) != rep.h.at(n - i)) rep.palindromic = false;

  // Reduced Euler characteristic of a (n-1)-sphere: -f(-1) = (-1)^(n-1).
  rep.euler_ok = -rep.f.eval(-1) == ((n - 1) % 2 == 0 ? 1 : -1);
  return rep;
}

}  // namespace coxtwist
