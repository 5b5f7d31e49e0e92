#include "coxtwist/poset.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coxtwist {

std::vector<int> genset_to_list(GenSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

std::size_t SimplicialComplexData::face_count(int k) const {
  if (k < 0 || k > dim()) return 0;
  return faces[k].size();
}

std::vector<std::vector<int>> SimplicialComplexData::facets() const {
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= dim(); ++k) {
    for (const auto& f : faces[k]) {
      bool contained = false;
      if (k + 1 <= dim()) {
        for (const auto& g : faces[k + 1]) {
          if (std::includes(g.begin(), g.end(), f.begin(), f.end())) {
            contained = true;
            break;
          }
        }
      }
      if (!contained) out.push_back(f);
    }
  }
  return out;
}

bool FinitePoset::bit(const std::vector<std::uint64_t>& rows, int a, int b) const {
  return (rows[static_cast<std::size_t>(a) * words_ + (b >> 6)] >> (b & 63)) & 1;
}

FinitePoset::FinitePoset(int n, const std::function<bool(int, int)>& leq_fn,
                         std::optional<std::vector<int>> rank, std::vector<std::string> labels) {
  if (n < 0) throw std::invalid_argument("poset size must be nonnegative");
  n_ = n;
  words_ = n == 0 ? 1 : (n + 63) / 64;
  up_.assign(static_cast<std::size_t>(n_) * words_, 0);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (leq_fn(a, b)) up_[static_cast<std::size_t>(a) * words_ + (b >> 6)] |= 1ull << (b & 63);
  rank_ = std::move(rank);
  labels_ = std::move(labels);
  finish(false);
}

FinitePoset FinitePoset::from_cover_closure(int n, const std::vector<std::vector<int>>& up_edges,
                                            std::vector<int> rank, std::vector<std::string> labels) {
  if (static_cast<int>(up_edges.size()) != n || static_cast<int>(rank.size()) != n)
    throw std::invalid_argument("cover closure: size mismatch");
  for (int a = 0; a < n; ++a)
    for (int b : up_edges[a])
      if (b < 0 || b >= n || rank[b] != rank[a] + 1)
        throw std::invalid_argument("cover closure: edge must raise rank by 1");

  FinitePoset p;
  p.n_ = n;
  p.words_ = n == 0 ? 1 : (n + 63) / 64;
  p.up_.assign(static_cast<std::size_t>(n) * p.words_, 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rank[a] > rank[b]; });
  for (int a : order) {
    auto* row = &p.up_[static_cast<std::size_t>(a) * p.words_];
    row[a >> 6] |= 1ull << (a & 63);
    for (int b : up_edges[a]) {
      const auto* src = &p.up_[static_cast<std::size_t>(b) * p.words_];
      for (int w = 0; w < p.words_; ++w) row[w] |= src[w];
    }
  }
  p.rank_ = std::move(rank);
  p.labels_ = std::move(labels);
  p.finish(true);
  return p;
}

void FinitePoset::finish(bool already_transitive) {
  if (labels_.empty()) {
    labels_.resize(n_);
    for (int i = 0; i < n_; ++i) labels_[i] = std::to_string(i);
  }
  if (static_cast<int>(labels_.size()) != n_)
    throw std::invalid_argument("poset labels: size mismatch");
  if (rank_ && static_cast<int>(rank_->size()) != n_)
    throw std::invalid_argument("poset rank: size mismatch");

  down_.assign(static_cast<std::size_t>(n_) * words_, 0);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (bit(up_, a, b)) down_[static_cast<std::size_t>(b) * words_ + (a >> 6)] |= 1ull << (a & 63);

  for (int a = 0; a < n_; ++a) {
    if (!bit(up_, a, a)) throw std::invalid_argument("order relation is not reflexive");
    for (int b = a + 1; b < n_; ++b)
      if (bit(up_, a, b) && bit(up_, b, a))
        throw std::invalid_argument("order relation is not antisymmetric");
  }
  if (!already_transitive) {
    if (n_ <= 500) {
      // a <= b forces up(b) subset of up(a); exhaustive over pairs.
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
          if (a == b || !bit(up_, a, b)) continue;
          const auto* ra = &up_[static_cast<std::size_t>(a) * words_];
          const auto* rb = &up_[static_cast<std::size_t>(b) * words_];
          for (int w = 0; w < words_; ++w)
            if (rb[w] & ~ra[w]) throw std::invalid_argument("order relation is not transitive");
        }
    } else {
      DetRng rng(1);
      for (int i = 0; i < 100000; ++i) {
        int a = static_cast<int>(rng.below(n_));
        int b = static_cast<int>(rng.below(n_));
        int c = static_cast<int>(rng.below(n_));
        if (bit(up_, a, b) && bit(up_, b, c) && !bit(up_, a, c))
          throw std::invalid_argument("order relation is not transitive");
      }
    }
  }

  covers_.assign(n_, {});
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      if (a == b || !bit(up_, a, b)) continue;
      // [a, b] = {a, b} exactly when b covers a.
      const auto* ra = &up_[static_cast<std::size_t>(a) * words_];
      const auto* rb = &down_[static_cast<std::size_t>(b) * words_];
      int cnt = 0;
      for (int w = 0; w < words_; ++w) cnt += std::popcount(ra[w] & rb[w]);
      if (cnt == 2) covers_[a].push_back(b);
    }
  }

  if (rank_) {
    for (int a = 0; a < n_; ++a)
      for (int b : covers_[a])
        if ((*rank_)[b] != (*rank_)[a] + 1)
          throw std::invalid_argument("rank function: cover does not raise rank by 1");
    auto mins = minimal_elements();
    for (int m : mins)
      if ((*rank_)[m] != (*rank_)[mins[0]])
        throw std::invalid_argument("rank function: minimal elements differ in rank");
  }
}

bool FinitePoset::leq(int a, int b) const {
  if (a < 0 || a >= n_ || b < 0 || b >= n_) throw std::invalid_argument("poset element out of range");
  return bit(up_, a, b);
}

int FinitePoset::rank_of(int a) const {
  if (!rank_) throw std::invalid_argument("poset has no rank function");
  if (a < 0 || a >= n_) throw std::invalid_argument("poset element out of range");
  return (*rank_)[a];
}

const std::string& FinitePoset::label(int a) const {
  if (a < 0 || a >= n_) throw std::invalid_argument("poset element out of range");
  return labels_[a];
}

std::vector<int> FinitePoset::minimal_elements() const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a) {
    bool minimal = true;
    for (int b = 0; b < n_ && minimal; ++b)
      if (b != a && bit(up_, b, a)) minimal = false;
    if (minimal) out.push_back(a);
  }
  return out;
}

std::vector<int> FinitePoset::maximal_elements() const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a)
    if (covers_[a].empty()) out.push_back(a);
  return out;
}

std::vector<int> FinitePoset::interval_elements(int u, int v) const {
  if (!leq(u, v)) throw std::invalid_argument("interval endpoints are not comparable");
  std::vector<int> out;
  const auto* ru = &up_[static_cast<std::size_t>(u) * words_];
  const auto* rv = &down_[static_cast<std::size_t>(v) * words_];
  for (int w = 0; w < words_; ++w) {
    std::uint64_t bits = ru[w] & rv[w];
    while (bits) {
      out.push_back(w * 64 + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return out;
}

FinitePoset FinitePoset::induced(const std::vector<int>& elems) const {
  const int k = static_cast<int>(elems.size());
  FinitePoset p;
  p.n_ = k;
  p.words_ = k == 0 ? 1 : (k + 63) / 64;
  p.up_.assign(static_cast<std::size_t>(k) * p.words_, 0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (bit(up_, elems[a], elems[b]))
        p.up_[static_cast<std::size_t>(a) * p.words_ + (b >> 6)] |= 1ull << (b & 63);
  if (rank_) {
    std::vector<int> r(k);
    for (int a = 0; a < k; ++a) r[a] = (*rank_)[elems[a]];
    p.rank_ = std::move(r);
  }
  p.labels_.resize(k);
  for (int a = 0; a < k; ++a) p.labels_[a] = labels_[elems[a]];
  // Convex subsets inherit transitivity; callers only pass intervals.
  p.finish(true);
  return p;
}

FinitePoset FinitePoset::interval(int u, int v) const { return induced(interval_elements(u, v)); }

FinitePoset FinitePoset::open_interval(int u, int v) const {
  auto elems = interval_elements(u, v);
  std::erase(elems, u);
  std::erase(elems, v);
  return induced(elems);
}

long long FinitePoset::mobius(int u, int v) const {
  auto elems = interval_elements(u, v);
  const int k = static_cast<int>(elems.size());
  // Topological order by down-set size within the interval.
  std::vector<int> below(k, 0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (bit(up_, elems[b], elems[a])) ++below[a];
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
  std::vector<long long> mu(k, 0);
  std::vector<int> pos(n_, -1);
  for (int a = 0; a < k; ++a) pos[elems[a]] = a;
  for (int idx : order) {
    if (elems[idx] == u) {
      mu[idx] = 1;
      continue;
    }
    long long acc = 0;
    for (int b = 0; b < k; ++b)
      if (b != idx && bit(up_, elems[b], elems[idx])) acc += mu[b];
    mu[idx] = -acc;
  }
  return mu[pos[v]];
}

EulerianReport FinitePoset::eulerian_report() const {
  EulerianReport rep;
  auto mins = minimal_elements();
  auto maxs = maximal_elements();
  if (mins.size() != 1 || maxs.size() != 1) {
    rep.status = EulerianReport::Status::not_bounded;
    rep.detail = "poset is not bounded";
    return rep;
  }
  std::vector<int> r(n_, 0);
  if (rank_) {
    r = *rank_;
  } else {
    // Longest-path rank from the bottom; gradedness then means covers raise it by 1.
    std::vector<int> below(n_, 0), order(n_);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (b != a && bit(up_, b, a)) ++below[a];
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
    for (int x : order)
      for (int b = 0; b < n_; ++b)
        if (b != x && bit(up_, b, x)) r[x] = std::max(r[x], r[b] + 1);
  }
  for (int a = 0; a < n_; ++a)
    for (int b : covers_[a])
      if (r[b] != r[a] + 1) {
        rep.status = EulerianReport::Status::not_graded;
        rep.u = a;
        rep.v = b;
        rep.detail = "cover does not raise rank by 1";
        return rep;
      }

  // mu over every interval from each base, in one topological sweep per base.
  std::vector<int> below(n_, 0), order(n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (b != a && bit(up_, b, a)) ++below[a];
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
  std::vector<long long> mu(n_);
  for (int u = 0; u < n_; ++u) {
    for (int x : order) {
      if (x == u) {
        mu[x] = 1;
        continue;
      }
      if (!bit(up_, u, x)) {
        mu[x] = 0;
        continue;
      }
      long long acc = 0;
      for (int z = 0; z < n_; ++z)
        if (z != x && bit(up_, u, z) && bit(up_, z, x)) acc += mu[z];
      mu[x] = -acc;
    }
    for (int v = 0; v < n_; ++v) {
      if (!bit(up_, u, v)) continue;
      long long expect = ((r[v] - r[u]) % 2 == 0) ? 1 : -1;
      if (mu[v] != expect) {
        rep.status = EulerianReport::Status::sign_violation;
        rep.u = u;
        rep.v = v;
        std::ostringstream os;
        os << "mu(" << u << "," << v << ") = " << mu[v] << ", expected " << expect;
        rep.detail = os.str();
        return rep;
      }
    }
  }
  return rep;
}

SimplicialComplexData FinitePoset::order_complex() const {
  SimplicialComplexData c;
  c.vertex_count = n_;
  std::vector<int> chain;
  auto extend = [&](auto&& self, int last) -> void {
    if (static_cast<int>(chain.size()) > static_cast<int>(c.faces.size()))
      c.faces.resize(chain.size());
    c.faces[chain.size() - 1].push_back(chain);
    for (int nxt = 0; nxt < n_; ++nxt) {
      if (nxt != last && bit(up_, last, nxt)) {
        chain.push_back(nxt);
        self(self, nxt);
        chain.pop_back();
      }
    }
  };
  for (int start = 0; start < n_; ++start) {
    chain.assign(1, start);
    extend(extend, start);
  }
  for (auto& level : c.faces) std::sort(level.begin(), level.end());
  return c;
}

std::vector<int> FinitePoset::linear_extension(std::uint64_t seed) const {
  DetRng rng(seed);
  std::vector<int> indeg(n_, 0);
  for (int a = 0; a < n_; ++a)
    for (int b : covers_[a]) ++indeg[b];
  std::vector<int> ready, out;
  for (int a = 0; a < n_; ++a)
    if (indeg[a] == 0) ready.push_back(a);
  while (!ready.empty()) {
    std::size_t pick = rng.below(ready.size());
    int x = ready[pick];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
    out.push_back(x);
    for (int b : covers_[x])
      if (--indeg[b] == 0) ready.insert(std::lower_bound(ready.begin(), ready.end(), b), b);
  }
  internal_check(static_cast<int>(out.size()) == n_, "linear extension did not exhaust the poset");
  return out;
}

bool FinitePoset::is_linear_extension(const std::vector<int>& order) const {
  if (static_cast<int>(order.size()) != n_) return false;
  std::vector<int> pos(n_, -1);
  for (int i = 0; i < n_; ++i) {
    if (order[i] < 0 || order[i] >= n_ || pos[order[i]] != -1) return false;
    pos[order[i]] = i;
  }
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (a != b && bit(up_, a, b) && pos[a] > pos[b]) return false;
  return true;
}

namespace {
std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}
}  // namespace

std::string FinitePoset::to_dot() const {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int a = 0; a < n_; ++a)
    os << "  n" << a << " [label=\"" << dot_escape(labels_[a]) << "\"];\n";
  for (int a = 0; a < n_; ++a)
    for (int b : covers_[a]) os << "  n" << a << " -> n" << b << ";\n";
  if (rank_) {
    int lo = n_ ? *std::min_element(rank_->begin(), rank_->end()) : 0;
    int hi = n_ ? *std::max_element(rank_->begin(), rank_->end()) : -1;
    for (int r = lo; r <= hi; ++r) {
      os << "  { rank=same;";
      for (int a = 0; a < n_; ++a)
        if ((*rank_)[a] == r) os << " n" << a << ";";
      os << " }\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string FinitePoset::to_text() const {
  std::ostringstream os;
  os << "# poset\tsize=" << n_ << "\tranked=" << (rank_ ? "yes" : "no") << "\n";
  os << "# columns: element\tlabel\trank\tcovers\n";
  for (int a = 0; a < n_; ++a) {
    os << a << "\t" << labels_[a] << "\t";
    if (rank_)
      os << (*rank_)[a];
    else
      os << "-";
    os << "\t";
    for (std::size_t i = 0; i < covers_[a].size(); ++i) {
      if (i) os << " ";
      os << covers_[a][i];
    }
    if (covers_[a].empty()) os << "-";
    os << "\n";
  }
  return os.str();
}

MatchingCheck verify_special_matching(const FinitePoset& p, const MatchingMap& m) {
  MatchingCheck res;
  const int n = p.size();
  if (static_cast<int>(m.map.size()) != n) {
    res.ok = false;
    res.detail = "matching size does not equal poset size";
    return res;
  }
  for (int x = 0; x < n; ++x) {
    int y = static_cast<int>(m.map[x]);
    if (y < 0 || y >= n || y == x || static_cast<int>(m.map[y]) != x) {
      res.ok = false;
      res.x = x;
      res.y = y;
      res.detail = "not a fixed-point-free involution";
      return res;
    }
  }
  auto is_cover = [&](int a, int b) {
    const auto& cov = p.covers()[a];
    return std::find(cov.begin(), cov.end(), b) != cov.end();
  };
  for (int x = 0; x < n; ++x) {
    int y = static_cast<int>(m.map[x]);
    if (!is_cover(x, y) && !is_cover(y, x)) {
      res.ok = false;
      res.x = x;
      res.y = y;
      res.detail = "element not matched to a cover-neighbour";
      return res;
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y : p.covers()[x]) {
      if (static_cast<int>(m.map[x]) == y) continue;
      if (!p.less(static_cast<int>(m.map[x]), static_cast<int>(m.map[y]))) {
        res.ok = false;
        res.x = x;
        res.y = y;
        res.detail = "cover x <| y with m(x) not below m(y)";
        return res;
      }
    }
  }
  return res;
}

}  // namespace coxtwist
