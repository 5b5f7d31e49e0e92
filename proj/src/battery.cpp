#include "coxtwist/battery.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <sstream>

#include "coxtwist/cells.hpp"
#include "coxtwist/homology.hpp"
#include "coxtwist/poset.hpp"
#include "coxtwist/twisted.hpp"

namespace coxtwist {

namespace {

struct Ctx {
  std::string name;
  SystemSpec spec;
  DiagramAutomorphism theta;
  std::optional<GroupTable> group;
  std::optional<TwistedTable> twisted;
  std::optional<GThetaGraph> graph;
  std::optional<FinitePoset> bruhat;
  std::optional<FaceComplex> complex;
};

using Out = std::vector<CheckResult>;

bool push(Out& out, const std::string& inst, const std::string& check, bool ok,
          std::string detail) {
  out.push_back({inst, check, ok, std::move(detail)});
  return ok;
}

std::string poly_str(const Polynomial& p) { return p.to_string(); }

// ---- structural checks -----------------------------------------------------

bool check_relations(Ctx& c, Out& out) {
  const GroupTable& g = *c.group;
  const int n = g.rank();
  const int N = g.root_count();
  auto compose_order = [&](int i, int j) {
    std::vector<std::uint32_t> prod(2 * N);
    const auto& pi = g.root_perm(g.mult(g.identity(), i, Side::right));
    const auto& pj = g.root_perm(g.mult(g.identity(), j, Side::right));
    for (int r = 0; r < 2 * N; ++r) prod[r] = pi[pj[r]];
    auto acc = prod;
    int ord = 1;
    auto is_id = [&](const std::vector<std::uint32_t>& p) {
      for (std::size_t k = 0; k < p.size(); ++k)
        if (p[k] != k) return false;
      return true;
    };
    while (!is_id(acc) && ord <= 2 * N + 2) {
      std::vector<std::uint32_t> nxt(2 * N);
      for (int r = 0; r < 2 * N; ++r) nxt[r] = acc[prod[r]];
      acc = std::move(nxt);
      ++ord;
    }
    return ord;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int expect = c.spec.matrix.entries[i][j];
      if (compose_order(i, j) != expect)
        return push(out, c.name, "relations", false,
                    "pair (" + std::to_string(i) + "," + std::to_string(j) +
                        ") has wrong order");
    }
  return push(out, c.name, "relations", true, "all generator pair orders match the matrix");
}

bool check_length_steps(Ctx& c, Out& out) {
  const GroupTable& g = *c.group;
  for (std::uint32_t w = 0; w < g.order(); ++w) {
    for (int s = 0; s < g.rank(); ++s) {
      for (Side side : {Side::right, Side::left}) {
        ElementRef m = g.mult({w}, s, side);
        int d = g.length(m) - g.length({w});
        if (d != 1 && d != -1)
          return push(out, c.name, "length-steps", false, "step changed length by " + std::to_string(d));
        if ((d == -1) != g.has_descent({w}, s, side))
          return push(out, c.name, "length-steps", false, "descent flag disagrees with length step");
      }
    }
  }
  return push(out, c.name, "length-steps", true,
              "every generator step moves length by exactly their descent direction");
}

bool check_words(Ctx& c, Out& out, DetRng& rng) {
  const GroupTable& g = *c.group;
  for (std::uint32_t w = 0; w < g.order(); ++w) {
    const auto& word = g.reduced_word({w});
    if (static_cast<int>(word.size()) != g.length({w}))
      return push(out, c.name, "words", false, "stored word length differs from length");
    if (g.evaluate_word(word).idx != w)
      return push(out, c.name, "words", false, "stored word does not evaluate to its element");
  }
  const int maxlen = 2 * g.length(g.longest()) + 2;
  for (int trial = 0; trial < 50; ++trial) {
    int len = static_cast<int>(rng.below(static_cast<std::uint64_t>(maxlen) + 1));
    std::vector<int> word(static_cast<std::size_t>(len));
    for (auto& s : word) s = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.rank())));
    auto [el, red] = g.reduce_word(word);
    if (static_cast<int>(red.size()) > len || (len - static_cast<int>(red.size())) % 2 != 0)
      return push(out, c.name, "words", false, "reduction violates length parity");
    if (g.evaluate_word(red) != el)
      return push(out, c.name, "words", false, "reduced word evaluates differently");
  }
  return push(out, c.name, "words", true, "stored words are reduced; random reductions keep parity");
}

bool check_twisted_oracle(Ctx& c, Out& out) {
  auto brute = brute_force_twisted(*c.group, c.theta);
  const TwistedTable& t = *c.twisted;
  std::vector<std::uint32_t> got;
  for (std::uint32_t m = 0; m < t.size(); ++m) got.push_back(t.element(m).idx);
  std::sort(got.begin(), got.end());
  std::vector<std::uint32_t> want;
  for (auto e : brute) want.push_back(e.idx);
  if (got != want)
    return push(out, c.name, "twisted-oracle", false,
                "orbit enumeration differs from the filter scan");
  return push(out, c.name, "twisted-oracle", true,
              "members=" + std::to_string(t.size()) + " match the filter scan");
}

bool check_rank_law(Ctx& c, Out& out) {
  const TwistedTable& t = *c.twisted;
  const GroupTable& g = *c.group;
  for (std::uint32_t m = 0; m < t.size(); ++m) {
    for (int s = 0; s < g.rank(); ++s) {
      std::uint32_t img = t.act(m, s);
      if (img == m) return push(out, c.name, "rank-law", false, "action has a fixed point");
      if (t.act(img, s) != m) return push(out, c.name, "rank-law", false, "action is not an involution");
      int d = t.rho(img) - t.rho(m);
      if (d != 1 && d != -1)
        return push(out, c.name, "rank-law", false, "rho step is not +-1");
      if ((d == -1) != g.has_descent(t.element(m), s, Side::right))
        return push(out, c.name, "rank-law", false,
                    "rho drop disagrees with the ordinary right descent");
    }
  }
  return push(out, c.name, "rank-law", true,
              "rho steps are +-1 and drops coincide with right descents");
}

bool check_top(Ctx& c, Out& out) {
  const TwistedTable& t = *c.twisted;
  std::uint32_t top = t.top();
  if (t.element(top) != c.group->longest())
    return push(out, c.name, "top-element", false, "rho-maximal member is not the longest element");
  return push(out, c.name, "top-element", true,
              "longest element is the unique rho-maximal member, rho=" + std::to_string(t.rho(top)));
}

bool check_bruhat_graded(Ctx& c, Out& out) {
  c.bruhat.emplace(bruhat_poset_twisted(*c.twisted));
  std::size_t covers = 0;
  for (const auto& cov : c.bruhat->covers()) covers += cov.size();
  return push(out, c.name, "twisted-bruhat-graded", true,
              "covers=" + std::to_string(covers) + ", graded by rho");
}

bool check_weak_suborder(Ctx& c, Out& out) {
  FinitePoset wk = weak_poset_twisted(*c.twisted);
  auto mins = wk.minimal_elements();
  if (mins.size() != 1 || mins[0] != 0)
    return push(out, c.name, "weak-suborder", false, "identity is not the unique weak minimum");
  return push(out, c.name, "weak-suborder", true, "weak order embeds in Bruhat; unique minimum e");
}

bool check_matchings(Ctx& c, Out& out) {
  const TwistedTable& t = *c.twisted;
  if (t.size() > 200)
    return push(out, c.name, "matchings", true, "skipped (size bound 200)");
  int verified = 0;
  for (std::uint32_t w = 0; w < t.size(); ++w) {
    for (int s = 0; s < c.group->rank(); ++s) {
      if (!t.twisted_descent(w, s)) continue;
      auto im = matching_from_generator(t, *c.bruhat, w, s);
      auto check = verify_special_matching(im.interval, im.matching);
      if (!check.ok)
        return push(out, c.name, "matchings", false,
                    "interval top member " + std::to_string(w) + ", generator " +
                        std::to_string(s) + ": " + check.detail);
      ++verified;
    }
  }
  return push(out, c.name, "matchings", true,
              std::to_string(verified) + " descent matchings are special");
}

bool check_eulerian(Ctx& c, Out& out) {
  if (c.twisted->size() > 500)
    return push(out, c.name, "eulerian", true, "skipped (size bound 500)");
  auto rep = c.bruhat->eulerian_report();
  if (!rep.ok()) return push(out, c.name, "eulerian", false, rep.detail);
  return push(out, c.name, "eulerian", true, "every interval alternates in sign");
}

bool check_cells(Ctx& c, Out& out) {
  c.graph.emplace(g_theta_graph(*c.twisted));
  c.complex.emplace(build_face_poset(*c.twisted, *c.graph));
  const FaceComplex& fc = *c.complex;
  auto boolean = fc.check_boolean_intervals();
  if (!boolean.ok)
    return push(out, c.name, "cells-boolean", false, boolean.detail);
  push(out, c.name, "cells-boolean", true,
       "cells=" + std::to_string(fc.cells().size()) + ", every interval is Boolean");
  auto thin = fc.check_thin();
  if (!thin.ok) return push(out, c.name, "cells-thin", false, thin.detail);
  return push(out, c.name, "cells-thin", true, "every codimension-1 cell lies under two facets");
}

bool check_h_poly(Ctx& c, Out& out, std::uint64_t seed) {
  auto rep = check_h_identities(*c.complex, *c.twisted, seed);
  std::string detail = "f=[" + poly_str(rep.f) + "] h=[" + poly_str(rep.h) + "] des=[" +
                       poly_str(rep.des) + "] " + rep.summary();
  return push(out, c.name, "h-identities", rep.ok(), detail);
}

bool check_shelling_samples(Ctx& c, Out& out, std::uint64_t seed, int samples) {
  const FaceComplex& fc = *c.complex;
  std::vector<int> reference;
  for (int i = 0; i < samples; ++i) {
    auto ext = fc.weak_poset().linear_extension(seed + static_cast<std::uint64_t>(i));
    std::vector<std::uint32_t> order(ext.begin(), ext.end());
    auto rep = fc.verify_shelling(order);
    if (!rep.ok || !rep.order_is_weak_extension)
      return push(out, c.name, "shelling-samples", false,
                  "sample " + std::to_string(i) + ": " +
                      (rep.violation ? rep.violation->what : "not a linear extension"));
    auto dims = rep.restriction_dims;
    std::sort(dims.begin(), dims.end());
    if (i == 0)
      reference = dims;
    else if (dims != reference)
      return push(out, c.name, "shelling-samples", false,
                  "restriction multiset differs between extensions");
  }
  return push(out, c.name, "shelling-samples", true,
              std::to_string(samples) + " weak-order extensions shell with one restriction multiset");
}

bool check_negative_control(Ctx& c, Out& out) {
  // Reversed order on the rank-2 diamond: the third facet meets the earlier
  // ones only in the bottom cell, which has codimension 2.
  const TwistedTable& t = *c.twisted;
  std::vector<std::uint32_t> bad{t.top()};
  for (std::uint32_t m = 0; m < t.size(); ++m)
    if (m != t.top()) bad.push_back(m);
  auto rep = c.complex->verify_shelling(bad);
  if (rep.ok || !rep.violation || rep.violation->step != 1)
    return push(out, c.name, "shelling-negative-control", false,
                "reversed order was not rejected at the second facet");
  return push(out, c.name, "shelling-negative-control", true,
              "reversed order rejected: " + rep.violation->what);
}

// ---- full-suite checks ------------------------------------------------------

bool check_bruhat_subword(Ctx& c, Out& out) {
  const GroupTable& g = *c.group;
  if (g.order() > 120)
    return push(out, c.name, "bruhat-subword-oracle", true, "skipped (order bound 120)");
  const std::uint32_t n = g.order();
  // below[w] = set of elements reachable as subwords of w's stored reduced word.
  std::vector<std::vector<char>> below(n, std::vector<char>(n, 0));
  for (std::uint32_t w = 0; w < n; ++w) {
    const auto& word = g.reduced_word({w});
    const std::size_t len = word.size();
    if (len > 25) return push(out, c.name, "bruhat-subword-oracle", true, "skipped (word too long)");
    for (std::uint64_t mask = 0; mask < (1ull << len); ++mask) {
      ElementRef el = g.identity();
      for (std::size_t i = 0; i < len; ++i)
        if ((mask >> i) & 1) el = g.mult(el, word[i], Side::right);
      below[w][el.idx] = 1;
    }
  }
  for (std::uint32_t w = 0; w < n; ++w)
    for (std::uint32_t v = 0; v < n; ++v)
      if (g.bruhat_leq({v}, {w}) != static_cast<bool>(below[w][v]))
        return push(out, c.name, "bruhat-subword-oracle", false,
                    "lifting and subword closure disagree at (" + std::to_string(v) + "," +
                        std::to_string(w) + ")");
  return push(out, c.name, "bruhat-subword-oracle", true,
              "lifting recursion matches the subword closure on all pairs");
}

bool check_coxeter_lifting(Ctx& c, Out& out) {
  const GroupTable& g = *c.group;
  if (g.order() > 48)
    return push(out, c.name, "coxeter-lifting", true, "skipped (order bound 48)");
  for (std::uint32_t w = 0; w < g.order(); ++w) {
    for (std::uint32_t v = 0; v < g.order(); ++v) {
      if (v == w || !g.bruhat_leq({v}, {w})) continue;
      for (int s = 0; s < g.rank(); ++s) {
        if (!g.has_descent({w}, s, Side::right)) continue;
        ElementRef ws = g.mult({w}, s, Side::right);
        ElementRef vs = g.mult({v}, s, Side::right);
        bool ok = g.bruhat_leq(vs, {w}) &&
                  (g.has_descent({v}, s, Side::right) ? g.bruhat_leq(vs, ws)
                                                      : g.bruhat_leq({v}, ws));
        if (!ok)
          return push(out, c.name, "coxeter-lifting", false,
                      "lifting fails at v=" + std::to_string(v) + " w=" + std::to_string(w) +
                          " s=" + std::to_string(s));
      }
    }
  }
  return push(out, c.name, "coxeter-lifting", true, "lifting property holds on all pairs");
}

bool check_coxeter_deletion(Ctx& c, Out& out, DetRng& rng) {
  const GroupTable& g = *c.group;
  int tested = 0;
  for (int trial = 0; trial < 600 && tested < 200; ++trial) {
    int len = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * g.length(g.longest()) + 1)));
    std::vector<int> word(static_cast<std::size_t>(len));
    for (auto& s : word) s = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.rank())));
    ElementRef el = g.evaluate_word(word);
    if (g.length(el) == len) continue;  // already reduced
    ++tested;
    bool found = false;
    for (int i = 0; i < len && !found; ++i) {
      for (int j = i + 1; j < len && !found; ++j) {
        std::vector<int> sub;
        for (int k = 0; k < len; ++k)
          if (k != i && k != j) sub.push_back(word[k]);
        if (g.evaluate_word(sub) == el) found = true;
      }
    }
    if (!found)
      return push(out, c.name, "coxeter-deletion", false,
                  "no deletable pair in a non-reduced word of length " + std::to_string(len));
  }
  return push(out, c.name, "coxeter-deletion", true,
              std::to_string(tested) + " non-reduced words all admit a deletable pair");
}

bool check_twisted_lifting(Ctx& c, Out& out) {
  const TwistedTable& t = *c.twisted;
  if (t.size() > 200)
    return push(out, c.name, "twisted-lifting", true, "skipped (size bound 200)");
  const FinitePoset& br = *c.bruhat;
  for (int w = 0; w < br.size(); ++w) {
    for (int v = 0; v < br.size(); ++v) {
      if (v == w || !br.leq(v, w)) continue;
      for (int s = 0; s < c.group->rank(); ++s) {
        if (!t.twisted_descent(static_cast<std::uint32_t>(w), s)) continue;
        int ws = static_cast<int>(t.act(static_cast<std::uint32_t>(w), s));
        int vs = static_cast<int>(t.act(static_cast<std::uint32_t>(v), s));
        bool ok = br.leq(vs, w) &&
                  (t.twisted_descent(static_cast<std::uint32_t>(v), s) ? br.leq(vs, ws)
                                                                       : br.leq(v, ws));
        if (!ok)
          return push(out, c.name, "twisted-lifting", false,
                      "lifting fails at v=" + std::to_string(v) + " w=" + std::to_string(w) +
                          " s=" + std::to_string(s));
      }
    }
  }
  return push(out, c.name, "twisted-lifting", true, "lifting property holds on all pairs");
}

bool check_twisted_deletion(Ctx& c, Out& out, DetRng& rng) {
  const TwistedTable& t = *c.twisted;
  const int n = c.group->rank();
  const int top_rho = t.rho(t.top());
  int tested = 0;
  for (int trial = 0; trial < 1500 && tested < 500; ++trial) {
    int len = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * top_rho + 1)));
    std::vector<int> word(static_cast<std::size_t>(len));
    for (auto& s : word) s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    std::uint32_t end = t.evaluate_underline(word);
    if (t.rho(end) == len) continue;
    ++tested;
    bool found = false;
    for (int i = 0; i < len && !found; ++i) {
      for (int j = i + 1; j < len && !found; ++j) {
        std::uint32_t m = 0;
        for (int k = 0; k < len; ++k)
          if (k != i && k != j) m = t.act(m, word[k]);
        if (m == end) found = true;
      }
    }
    if (!found)
      return push(out, c.name, "twisted-deletion", false,
                  "no deletable pair in a non-reduced underline word of length " +
                      std::to_string(len));
  }
  return push(out, c.name, "twisted-deletion", true,
              std::to_string(tested) + " non-reduced underline words all admit a deletable pair");
}

bool check_twisted_exchange(Ctx& c, Out& out, DetRng& rng) {
  const TwistedTable& t = *c.twisted;
  const int n = c.group->rank();
  for (int trial = 0; trial < 200; ++trial) {
    // Random reduced underline word via a random rho-increasing walk.
    std::vector<int> word;
    std::uint32_t cur = 0;
    for (;;) {
      std::vector<int> ups;
      for (int s = 0; s < n; ++s)
        if (!t.twisted_descent(cur, s)) ups.push_back(s);
      if (ups.empty() || (!word.empty() && rng.below(3) == 0)) break;
      int s = ups[rng.below(ups.size())];
      word.push_back(s);
      cur = t.act(cur, s);
    }
    int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    auto res = twisted_exchange_check(t, word, s);
    bool lowers = t.twisted_descent(cur, s);
    if (res.lowered != lowers)
      return push(out, c.name, "twisted-exchange", false, "descent flag mismatch");
    if (res.lowered) {
      std::uint32_t target = t.act(cur, s);
      std::uint32_t m = 0;
      for (std::size_t i = 0; i < word.size(); ++i)
        if (static_cast<int>(i) != res.drop_index) m = t.act(m, word[i]);
      if (m != target)
        return push(out, c.name, "twisted-exchange", false, "witness does not evaluate correctly");
    }
  }
  return push(out, c.name, "twisted-exchange", true, "200 random exchange checks verified");
}

bool check_greedy_min(Ctx& c, Out& out, DetRng& rng) {
  const TwistedTable& t = *c.twisted;
  const int n = c.group->rank();
  const GenSet full = (GenSet{1} << n) - 1;
  if ((std::uint64_t{1} << n) * t.size() > 50000)
    return push(out, c.name, "greedy-min", true, "skipped (size bound)");
  for (std::uint32_t m = 0; m < t.size(); ++m) {
    for (GenSet J = 0; J <= full; ++J) {
      std::uint32_t expect = c.complex->min_of(m, J);
      for (int trial = 0; trial < 100; ++trial) {
        std::uint32_t cur = m;
        for (;;) {
          auto choices = genset_to_list(t.twisted_descent_set(cur) & J);
          if (choices.empty()) break;
          cur = t.act(cur, choices[rng.below(choices.size())]);
        }
        if (cur != expect)
          return push(out, c.name, "greedy-min", false,
                      "descent order changed the component minimum");
      }
    }
  }
  return push(out, c.name, "greedy-min", true,
              "random descent orders always reach the component minimum");
}

bool check_cell_keys(Ctx& c, Out& out) {
  const TwistedTable& t = *c.twisted;
  const FaceComplex& fc = *c.complex;
  const int n = c.group->rank();
  const GenSet full = (GenSet{1} << n) - 1;
  for (std::uint32_t m = 0; m < t.size(); ++m) {
    for (GenSet J = 0; J <= full; ++J) {
      Cell cell = component_cell(t, *c.graph, m, J);
      int idx = fc.cell_index(J, cell.min_elem);
      if (idx < 0 || fc.cells()[static_cast<std::size_t>(idx)].vertices != cell.vertices ||
          fc.cells()[static_cast<std::size_t>(idx)].edges != cell.edges ||
          cell.min_elem != fc.min_of(m, J))
        return push(out, c.name, "cell-keys", false, "standalone cell differs from the table");
    }
  }
  return push(out, c.name, "cell-keys", true, "component cells agree with the cell table");
}

bool check_sphere_intervals(Ctx& c, Out& out) {
  const TwistedTable& t = *c.twisted;
  if (t.size() > 200)
    return push(out, c.name, "sphere-intervals", true, "skipped (size bound 200)");
  const FinitePoset& br = *c.bruhat;
  int checked = 0;
  for (int u = 0; u < br.size(); ++u) {
    for (int v = 0; v < br.size(); ++v) {
      if (u == v || !br.leq(u, v)) continue;
      int diff = br.rank_of(v) - br.rank_of(u);
      if (diff > 4) continue;
      auto res = verify_sphere_interval(br, u, v);
      if (!res.ok)
        return push(out, c.name, "sphere-intervals", false,
                    "interval (" + std::to_string(u) + "," + std::to_string(v) +
                        ") is not a sphere of dimension " + std::to_string(res.expected_dim));
      ++checked;
    }
  }
  return push(out, c.name, "sphere-intervals", true,
              std::to_string(checked) + " intervals of rank difference <= 4 are spheres");
}

bool check_cone_triviality(Ctx& c, Out& out, DetRng& rng) {
  const FinitePoset& br = *c.bruhat;
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < br.size(); ++u)
    for (int v = 0; v < br.size(); ++v)
      if (u != v && br.leq(u, v) && br.rank_of(v) - br.rank_of(u) >= 2 &&
          br.rank_of(v) - br.rank_of(u) <= 4)
        pairs.emplace_back(u, v);
  int samples = std::min<std::size_t>(10, pairs.size());
  for (int i = 0; i < samples; ++i) {
    auto [u, v] = pairs[rng.below(pairs.size())];
    auto prof = reduced_homology(br.interval(u, v).order_complex());
    if (!prof.trivial())
      return push(out, c.name, "cone-triviality", false,
                  "closed interval complex has nontrivial homology");
  }
  return push(out, c.name, "cone-triviality", true,
              std::to_string(samples) + " closed-interval complexes are acyclic");
}

// Product instances: generators [a_1..a_n, b_1..b_n] with theta the factor swap.
// phi(w) = (w, w^-1) is an isomorphism from the base group to the twisted set.
bool check_product_functor(Ctx& c, Out& out) {
  std::string base_name;
  if (c.name == "a1xa1_swap") base_name = "a1_id";
  else if (c.name == "a2xa2_swap") base_name = "a2_id";
  else if (c.name == "b2xb2_swap") base_name = "b2_id";
  else return true;  // not a product instance

  const CatalogEntry* base_entry = catalog_lookup(base_name);
  internal_check(base_entry != nullptr, "product base instance missing from the catalog");
  SystemSpec base_spec = parse_system_spec(base_entry->json);
  GroupTable base = build_group(base_spec.matrix, {});
  const int n = base.rank();
  const GroupTable& prod = *c.group;
  const TwistedTable& t = *c.twisted;

  if (prod.rank() != 2 * n || t.size() != base.order())
    return push(out, c.name, "product-functor", false, "size mismatch with the base group");

  std::vector<int> phi(base.order());  // base element -> member index
  for (std::uint32_t w = 0; w < base.order(); ++w) {
    ElementRef img = prod.identity();
    for (int s : base.reduced_word({w})) img = prod.mult(img, s, Side::right);
    for (int s : base.reduced_word(base.inverse({w})))
      img = prod.mult(img, s + n, Side::right);
    int m = t.member_of(img);
    if (m < 0)
      return push(out, c.name, "product-functor", false, "(w, w^-1) is not a member");
    phi[w] = m;
    if (t.rho(static_cast<std::uint32_t>(m)) != base.length({w}))
      return push(out, c.name, "product-functor", false, "rho differs from the base length");
  }
  {
    auto sorted = phi;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != static_cast<int>(i))
        return push(out, c.name, "product-functor", false, "phi is not a bijection onto members");
  }

  // Bruhat and two-sided weak orders transport along phi.
  const FinitePoset& br = *c.bruhat;
  FinitePoset base_br = base.bruhat_poset();
  FinitePoset wk = weak_poset_twisted(t);
  FinitePoset base_wk = base.two_sided_weak_poset();
  for (std::uint32_t v = 0; v < base.order(); ++v)
    for (std::uint32_t w = 0; w < base.order(); ++w) {
      if (base_br.leq(static_cast<int>(v), static_cast<int>(w)) != br.leq(phi[v], phi[w]))
        return push(out, c.name, "product-functor", false, "Bruhat orders do not correspond");
      if (base_wk.leq(static_cast<int>(v), static_cast<int>(w)) != wk.leq(phi[v], phi[w]))
        return push(out, c.name, "product-functor", false, "weak orders do not correspond");
    }

  // Reduced words of the base embed as reduced underline expressions.
  for (std::uint32_t w = 0; w < base.order(); ++w) {
    std::uint32_t m = 0;
    for (int s : base.reduced_word({w})) {
      std::uint32_t nxt = t.act(m, s);
      if (t.rho(nxt) != t.rho(m) + 1)
        return push(out, c.name, "product-functor", false,
                    "embedded reduced word is not rho-increasing");
      m = nxt;
    }
    if (static_cast<int>(m) != phi[w])
      return push(out, c.name, "product-functor", false,
                  "embedded reduced word misses phi(w)");
  }

  // Two-sided descent polynomial of the base, by direct counting.
  std::vector<long long> counts(static_cast<std::size_t>(2 * n) + 1, 0);
  for (std::uint32_t w = 0; w < base.order(); ++w) {
    int d = std::popcount(base.descent_set({w}, Side::right)) +
            std::popcount(base.descent_set({w}, Side::left));
    ++counts[static_cast<std::size_t>(d)];
  }
  Polynomial two_sided = polynomial_from_histogram(counts);
  Polynomial des = descent_polynomial(t);
  if (!(des == two_sided))
    return push(out, c.name, "product-functor", false,
                "descent polynomial [" + des.to_string() + "] differs from the two-sided count [" +
                    two_sided.to_string() + "]");
  return push(out, c.name, "product-functor", true,
              "phi transports both orders, words and descents; des=[" + des.to_string() + "]");
}

}  // namespace

std::vector<CheckResult> run_battery_on(const std::string& name, const std::string& json,
                                        const BatterySettings& settings) {
  Out out;
  Ctx c;
  c.name = name;
  try {
    c.spec = parse_system_spec(json);
    c.theta = validate_automorphism(c.spec.matrix, c.spec.theta);
    c.group.emplace(build_group(c.spec.matrix, settings.caps));
    c.twisted.emplace(enumerate_twisted(*c.group, c.theta));
  } catch (const ParseError& e) {
    push(out, name, "build", false, std::string("parse: ") + e.what());
    return out;
  } catch (const CapExceeded& e) {
    push(out, name, "build", false, std::string("caps: ") + e.what());
    return out;
  }
  push(out, name, "build", true,
       "order=" + std::to_string(c.group->order()) +
           " roots=" + std::to_string(c.group->root_count()) +
           " members=" + std::to_string(c.twisted->size()));

  const int samples = settings.shelling_samples > 0 ? settings.shelling_samples
                                                    : (settings.full ? 100 : 10);
  DetRng rng(settings.seed ^ 0x5bd1e995u);

  if (!check_relations(c, out)) return out;
  if (!check_length_steps(c, out)) return out;
  if (!check_words(c, out, rng)) return out;
  if (!check_twisted_oracle(c, out)) return out;
  if (!check_rank_law(c, out)) return out;
  if (!check_top(c, out)) return out;
  if (!check_bruhat_graded(c, out)) return out;
  if (!check_weak_suborder(c, out)) return out;
  if (!check_matchings(c, out)) return out;
  if (!check_eulerian(c, out)) return out;
  if (!check_cells(c, out)) return out;
  if (!check_h_poly(c, out, settings.seed)) return out;
  if (!check_shelling_samples(c, out, settings.seed, samples)) return out;
  if (c.name == "a2_id" && !check_negative_control(c, out)) return out;

  if (settings.full) {
    if (!check_bruhat_subword(c, out)) return out;
    if (!check_coxeter_lifting(c, out)) return out;
    if (!check_coxeter_deletion(c, out, rng)) return out;
    if (!check_twisted_lifting(c, out)) return out;
    if (!check_twisted_deletion(c, out, rng)) return out;
    if (!check_twisted_exchange(c, out, rng)) return out;
    if (!check_greedy_min(c, out, rng)) return out;
    if (!check_cell_keys(c, out)) return out;
    if (!check_sphere_intervals(c, out)) return out;
    if (!check_cone_triviality(c, out, rng)) return out;
    if (!check_product_functor(c, out)) return out;
  }
  return out;
}

std::vector<CheckResult> run_battery(const BatterySettings& settings) {
  Out all;
  for (const auto& entry : builtin_catalog()) {
    auto res = run_battery_on(entry.name, entry.json, settings);
    bool failed = false;
    for (auto& r : res) {
      failed = failed || !r.ok;
      all.push_back(std::move(r));
    }
    if (failed) break;
  }
  return all;
}

}  // namespace coxtwist
