#include "coxtwist/twisted.hpp"

#include <algorithm>
#include <stdexcept>

namespace coxtwist {

bool DiagramAutomorphism::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

DiagramAutomorphism validate_automorphism(const CoxeterMatrix& cm, std::vector<int> perm) {
  const int n = cm.rank();
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("automorphism permutation has wrong size");
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n) throw std::invalid_argument("automorphism image out of range");
    if (seen[perm[i]]) throw std::invalid_argument("automorphism is not a bijection");
    seen[perm[i]] = true;
  }
  for (int i = 0; i < n; ++i)
    if (perm[perm[i]] != i) throw std::invalid_argument("automorphism is not an involution");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cm.entries[perm[i]][perm[j]] != cm.entries[i][j])
        throw std::invalid_argument("automorphism does not preserve the matrix");
  return DiagramAutomorphism{std::move(perm)};
}

ElementRef apply_automorphism(const GroupTable& g, const DiagramAutomorphism& theta,
                              ElementRef w) {
  ElementRef out = g.identity();
  for (int s : g.reduced_word(w)) out = g.mult(out, theta.apply(s), Side::right);
  return out;
}

bool is_twisted_involution(const GroupTable& g, const DiagramAutomorphism& theta, ElementRef w) {
  return apply_automorphism(g, theta, w) == g.inverse(w);
}

ElementRef underline_act(const GroupTable& g, const DiagramAutomorphism& theta, ElementRef w,
                         int s, bool strict) {
  if (s < 0 || s >= g.rank()) throw std::invalid_argument("generator index out of range");
  if (static_cast<int>(theta.perm.size()) != g.rank())
    throw std::invalid_argument("automorphism rank mismatch");
  if (strict && !is_twisted_involution(g, theta, w))
    throw std::invalid_argument("element is not a twisted involution");
  ElementRef ws = g.mult(w, s, Side::right);
  ElementRef tws = g.mult(ws, theta.apply(s), Side::left);
  return g.length(tws) == g.length(w) ? ws : tws;
}

std::vector<ElementRef> brute_force_twisted(const GroupTable& g,
                                            const DiagramAutomorphism& theta) {
  std::vector<ElementRef> out;
  for (std::uint32_t w = 0; w < g.order(); ++w)
    if (is_twisted_involution(g, theta, {w})) out.push_back({w});
  return out;
}

TwistedTable enumerate_twisted(const GroupTable& g, const DiagramAutomorphism& theta) {
  if (static_cast<int>(theta.perm.size()) != g.rank())
    throw std::invalid_argument("automorphism rank mismatch");
  const int n = g.rank();
  TwistedTable t;
  t.group_ = &g;
  t.theta_ = theta;
  t.member_of_.assign(g.order(), -1);

  t.members_.push_back(g.identity());
  t.member_of_[0] = 0;
  t.rho_.push_back(0);
  t.words_.push_back({});
  for (std::uint32_t m = 0; m < t.members_.size(); ++m) {
    for (int s = 0; s < n; ++s) {
      ElementRef img = underline_act(g, theta, t.members_[m], s, false);
      internal_check(img != t.members_[m], "underline action has a fixed point");
      if (t.member_of_[img.idx] < 0) {
        t.member_of_[img.idx] = static_cast<std::int32_t>(t.members_.size());
        t.members_.push_back(img);
        t.rho_.push_back(t.rho_[m] + 1);
        auto word = t.words_[m];
        word.push_back(s);
        t.words_.push_back(std::move(word));
      }
    }
  }

  t.act_.resize(static_cast<std::size_t>(t.members_.size()) * n);
  for (std::uint32_t m = 0; m < t.members_.size(); ++m) {
    internal_check(is_twisted_involution(g, theta, t.members_[m]),
                   "enumeration produced a non twisted involution");
    for (int s = 0; s < n; ++s) {
      ElementRef img = underline_act(g, theta, t.members_[m], s, false);
      std::int32_t mi = t.member_of_[img.idx];
      internal_check(mi >= 0, "underline action left the enumerated set");
      t.act_[static_cast<std::size_t>(m) * n + s] = static_cast<std::uint32_t>(mi);
    }
  }
  return t;
}

ElementRef TwistedTable::element(std::uint32_t member) const {
  if (member >= size()) throw std::invalid_argument("member index out of range");
  return members_[member];
}

int TwistedTable::member_of(ElementRef w) const {
  if (w.idx >= member_of_.size()) throw std::invalid_argument("element index out of range");
  return member_of_[w.idx];
}

int TwistedTable::rho(std::uint32_t member) const {
  if (member >= size()) throw std::invalid_argument("member index out of range");
  return rho_[member];
}

const std::vector<int>& TwistedTable::underline_word(std::uint32_t member) const {
  if (member >= size()) throw std::invalid_argument("member index out of range");
  return words_[member];
}

std::uint32_t TwistedTable::act(std::uint32_t member, int s) const {
  if (member >= size()) throw std::invalid_argument("member index out of range");
  if (s < 0 || s >= group_->rank()) throw std::invalid_argument("generator index out of range");
  return act_[static_cast<std::size_t>(member) * group_->rank() + s];
}

std::uint32_t TwistedTable::evaluate_underline(std::span<const int> word) const {
  std::uint32_t m = 0;
  for (int s : word) m = act(m, s);
  return m;
}

bool TwistedTable::twisted_descent(std::uint32_t member, int s) const {
  return rho_[act(member, s)] < rho_[member];
}

GenSet TwistedTable::twisted_descent_set(std::uint32_t member) const {
  GenSet out = 0;
  for (int s = 0; s < group_->rank(); ++s)
    if (twisted_descent(member, s)) out |= GenSet{1} << s;
  return out;
}

std::uint32_t TwistedTable::top() const {
  internal_check(size() > 0, "empty twisted table");
  std::uint32_t best = 0;
  int seen = 1;
  for (std::uint32_t m = 1; m < size(); ++m) {
    if (rho_[m] > rho_[best]) {
      best = m;
      seen = 1;
    } else if (rho_[m] == rho_[best]) {
      ++seen;
    }
  }
  internal_check(seen == 1, "rho-maximal element is not unique");
  return best;
}

ExchangeResult twisted_exchange_check(const TwistedTable& t, std::span<const int> word, int s) {
  std::uint32_t cur = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    cur = t.act(cur, word[i]);
    if (t.rho(cur) != static_cast<int>(i) + 1)
      throw std::invalid_argument("word is not a reduced underline expression");
  }
  std::uint32_t v = t.act(cur, s);
  if (t.rho(v) > t.rho(cur)) return {false, -1};
  for (std::size_t drop = 0; drop < word.size(); ++drop) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < word.size(); ++i)
      if (i != drop) m = t.act(m, word[i]);
    if (m == v) return {true, static_cast<int>(drop)};
  }
  throw InternalError("exchange witness not found");
}

FinitePoset bruhat_poset_twisted(const TwistedTable& t) {
  const GroupTable& g = t.group();
  const int k = static_cast<int>(t.size());
  std::vector<int> rank(k);
  std::vector<std::string> labels(k);
  for (int m = 0; m < k; ++m) {
    rank[m] = t.rho(static_cast<std::uint32_t>(m));
    labels[m] = g.word_label(t.element(static_cast<std::uint32_t>(m)));
  }
  try {
    return FinitePoset(
        k,
        [&](int a, int b) {
          return g.bruhat_leq(t.element(static_cast<std::uint32_t>(a)),
                              t.element(static_cast<std::uint32_t>(b)));
        },
        std::move(rank), std::move(labels));
  } catch (const std::invalid_argument& e) {
    // The induced order is graded by rho for every valid build.
    throw InternalError(std::string("induced Bruhat order is not graded by rho: ") + e.what());
  }
}

FinitePoset weak_poset_twisted(const TwistedTable& t) {
  const int k = static_cast<int>(t.size());
  const int n = t.group().rank();
  std::vector<std::vector<int>> up(k);
  std::vector<int> rank(k);
  std::vector<std::string> labels(k);
  for (int m = 0; m < k; ++m) {
    rank[m] = t.rho(static_cast<std::uint32_t>(m));
    labels[m] = t.group().word_label(t.element(static_cast<std::uint32_t>(m)));
    for (int s = 0; s < n; ++s) {
      std::uint32_t img = t.act(static_cast<std::uint32_t>(m), s);
      if (t.rho(img) > rank[m]) up[m].push_back(static_cast<int>(img));
    }
    std::sort(up[m].begin(), up[m].end());
    up[m].erase(std::unique(up[m].begin(), up[m].end()), up[m].end());
  }
  FinitePoset wk = FinitePoset::from_cover_closure(k, up, std::move(rank), std::move(labels));
  const GroupTable& g = t.group();
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (wk.leq(a, b))
        internal_check(g.bruhat_leq(t.element(static_cast<std::uint32_t>(a)),
                                    t.element(static_cast<std::uint32_t>(b))),
                       "weak order is not a suborder of the Bruhat order");
  return wk;
}

GThetaGraph g_theta_graph(const TwistedTable& t) {
  GThetaGraph out;
  out.vertices = t.size();
  const int n = t.group().rank();
  for (std::uint32_t m = 0; m < t.size(); ++m) {
    for (int s = 0; s < n; ++s) {
      std::uint32_t v = t.act(m, s);
      if (m < v) out.edges.push_back({m, v, s});
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

IntervalMatching matching_from_generator(const TwistedTable& t, const FinitePoset& bruhat,
                                         std::uint32_t w_member, int s) {
  if (bruhat.size() != static_cast<int>(t.size()))
    throw std::invalid_argument("poset does not match the twisted table");
  if (w_member >= t.size()) throw std::invalid_argument("member index out of range");
  if (!t.twisted_descent(w_member, s))
    throw std::invalid_argument("generator is not a descent of the interval top");

  IntervalMatching out;
  auto elems = bruhat.interval_elements(0, static_cast<int>(w_member));
  out.interval = bruhat.interval(0, static_cast<int>(w_member));
  out.members.assign(elems.begin(), elems.end());
  std::vector<int> local(t.size(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) local[elems[i]] = static_cast<int>(i);
  out.matching.map.resize(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    std::uint32_t img = t.act(static_cast<std::uint32_t>(elems[i]), s);
    internal_check(local[img] >= 0, "underline action left the closed interval");
    out.matching.map[i] = static_cast<std::uint32_t>(local[img]);
  }
  return out;
}

}  // namespace coxtwist
