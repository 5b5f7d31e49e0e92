#include "coxtwist/coxeter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace coxtwist {

namespace {

// Root-matching tolerance for the numeric bootstrap.  The permutations frozen
// from it are certified exactly afterwards, so this never leaks into results.
constexpr double kRootTol = 1e-9;
constexpr double kCoordBlowup = 1e6;

}  // namespace

int CoxeterMatrix::generator_index(const std::string& name) const {
  for (int i = 0; i < rank(); ++i)
    if (generators[i] == name) return i;
  return -1;
}

CoxeterMatrix make_coxeter_matrix(std::vector<std::string> generators,
                                  std::vector<std::vector<int>> entries) {
  const int n = static_cast<int>(generators.size());
  if (n == 0) throw ParseError("system must declare at least one generator");
  if (n > 64) throw ParseError("more than 64 generators is not supported");
  for (int i = 0; i < n; ++i) {
    if (generators[i].empty()) throw ParseError("generator names must be nonempty");
    for (int j = i + 1; j < n; ++j)
      if (generators[i] == generators[j])
        throw ParseError("duplicate generator name: " + generators[i]);
  }
  if (static_cast<int>(entries.size()) != n) throw ParseError("matrix must be square of rank " + std::to_string(n));
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(entries[i].size()) != n)
      throw ParseError("matrix must be square of rank " + std::to_string(n));
  for (int i = 0; i < n; ++i) {
    if (entries[i][i] != 1) throw ParseError("matrix diagonal must be 1");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (entries[i][j] == 0) throw ParseError("matrix entry 0 (infinite labels are not supported)");
      if (entries[i][j] < 1) throw ParseError("matrix entries must be positive");
      if (entries[i][j] == 1) throw ParseError("off-diagonal matrix entry must be at least 2");
      if (entries[i][j] != entries[j][i]) throw ParseError("matrix must be symmetric");
    }
  }
  CoxeterMatrix cm;
  cm.generators = std::move(generators);
  cm.entries = std::move(entries);
  return cm;
}

SystemSpec parse_system_spec(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed system spec: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("system spec must be a JSON object");
  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    if (key != "generators" && key != "matrix" && key != "automorphism")
      throw ParseError("unknown field in system spec: " + key);
  }
  if (!doc.contains("generators") || !doc.contains("matrix"))
    throw ParseError("system spec requires \"generators\" and \"matrix\"");

  const auto& gens = doc["generators"];
  if (!gens.is_array()) throw ParseError("\"generators\" must be an array of strings");
  std::vector<std::string> names;
  for (const auto& g : gens) {
    if (!g.is_string()) throw ParseError("\"generators\" must be an array of strings");
    names.push_back(g.get<std::string>());
  }

  const auto& mat = doc["matrix"];
  if (!mat.is_array()) throw ParseError("\"matrix\" must be an array of integer rows");
  std::vector<std::vector<int>> entries;
  for (const auto& row : mat) {
    if (!row.is_array()) throw ParseError("\"matrix\" must be an array of integer rows");
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw ParseError("matrix entries must be integers");
      r.push_back(x.get<int>());
    }
    entries.push_back(std::move(r));
  }

  SystemSpec spec;
  spec.matrix = make_coxeter_matrix(std::move(names), std::move(entries));
  const int n = spec.matrix.rank();
  spec.theta.resize(n);
  for (int i = 0; i < n; ++i) spec.theta[i] = i;
  if (doc.contains("automorphism")) {
    const auto& am = doc["automorphism"];
    if (!am.is_object()) throw ParseError("\"automorphism\" must map generator names to generator names");
    for (const auto& item : am.items()) {
      int from = spec.matrix.generator_index(item.key());
      if (from < 0) throw ParseError("automorphism refers to unknown generator: " + item.key());
      if (!item.value().is_string())
        throw ParseError("\"automorphism\" must map generator names to generator names");
      int to = spec.matrix.generator_index(item.value().get<std::string>());
      if (to < 0)
        throw ParseError("automorphism refers to unknown generator: " +
                         item.value().get<std::string>());
      spec.theta[from] = to;
    }
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
      if (seen[spec.theta[i]]) throw ParseError("automorphism is not a bijection");
      seen[spec.theta[i]] = true;
    }
  }
  return spec;
}

CoxeterMatrix parse_system(const std::string& text) { return parse_system_spec(text).matrix; }

// ---------------------------------------------------------------------------
// group construction

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

std::vector<std::uint32_t> compose(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) out[r] = a[b[r]];
  return out;
}

bool is_identity_perm(const std::vector<std::uint32_t>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

}  // namespace

struct GroupTable::BruhatCache {
  std::mutex mu;
  std::unordered_map<std::uint64_t, bool> memo;
};

GroupTable::GroupTable(GroupTable&&) noexcept = default;
GroupTable& GroupTable::operator=(GroupTable&&) noexcept = default;
GroupTable::~GroupTable() = default;

GroupTable build_group(const CoxeterMatrix& cm, const BuildCaps& caps) {
  const int n = cm.rank();

  std::vector<std::vector<double>> bform(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      bform[i][j] = (i == j) ? 1.0 : -std::cos(std::numbers::pi / cm.entries[i][j]);

  auto reflect = [&](int i, const std::vector<double>& v) {
    std::vector<double> out = v;
    double c = 0;
    for (int j = 0; j < n; ++j) c += bform[i][j] * v[j];
    out[i] -= 2 * c;
    return out;
  };
  auto matches = [&](const std::vector<double>& a, const std::vector<double>& b) {
    for (int j = 0; j < n; ++j)
      if (std::abs(a[j] - b[j]) > kRootTol) return false;
    return true;
  };

  // Close the positive roots; s_i fixes positivity away from its own simple root.
  std::vector<std::vector<double>> roots;
  for (int i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    roots.push_back(std::move(e));
  }
  for (std::size_t head = 0; head < roots.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      auto img = reflect(i, roots[head]);
      bool pos = true, neg = true;
      for (int j = 0; j < n; ++j) {
        if (img[j] < -kRootTol) pos = false;
        if (img[j] > kRootTol) neg = false;
        if (std::abs(img[j]) > kCoordBlowup)
          throw CapExceeded("root bootstrap failed to close (system is infinite or too large)");
      }
      if (neg) continue;  // only -alpha_i arises here
      if (!pos) throw CapExceeded("root bootstrap failed to close (system is infinite or too large)");
      bool known = false;
      for (const auto& r : roots)
        if (matches(r, img)) {
          known = true;
          break;
        }
      if (!known) {
        if (roots.size() >= caps.root_cap)
          throw CapExceeded("root closure exceeded the root cap (system is infinite or too large)");
        roots.push_back(std::move(img));
      }
    }
  }
  const int N = static_cast<int>(roots.size());

  // Freeze generators as exact permutations of the 2N signed roots.
  std::vector<std::vector<std::uint32_t>> gen_perm(n, std::vector<std::uint32_t>(2 * N));
  auto flip = [N](std::uint32_t r) { return r >= static_cast<std::uint32_t>(N) ? r - N : r + N; };
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < N; ++p) {
      auto img = reflect(i, roots[p]);
      bool neg = true;
      for (int j = 0; j < n; ++j)
        if (img[j] > kRootTol) neg = false;
      int found = -1;
      if (neg) {
        for (int j = 0; j < n; ++j) img[j] = -img[j];
        for (int q = 0; q < N; ++q)
          if (matches(roots[q], img)) {
            found = q + N;
            break;
          }
      } else {
        for (int q = 0; q < N; ++q)
          if (matches(roots[q], img)) {
            found = q;
            break;
          }
      }
      if (found < 0)
        throw CapExceeded("root bootstrap failed to close (system is infinite or too large)");
      gen_perm[i][p] = static_cast<std::uint32_t>(found);
    }
    for (int p = 0; p < N; ++p) gen_perm[i][N + p] = flip(gen_perm[i][p]);
  }

  // Exact certification of the defining relations.
  for (int i = 0; i < n; ++i)
    internal_check(is_identity_perm(compose(gen_perm[i], gen_perm[i])),
                   "generator permutation is not an involution");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto prod = compose(gen_perm[i], gen_perm[j]);
      auto acc = prod;
      int ord = 1;
      while (!is_identity_perm(acc)) {
        acc = compose(acc, prod);
        ++ord;
        internal_check(ord <= cm.entries[i][j], "generator pair order exceeds its label");
      }
      internal_check(ord == cm.entries[i][j], "generator pair order does not match its label");
    }
  }

  GroupTable g;
  g.matrix_ = cm;
  g.root_count_ = N;
  g.bruhat_cache_ = std::make_unique<GroupTable::BruhatCache>();

  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> index;
  std::vector<std::uint32_t> id(2 * N);
  for (int r = 0; r < 2 * N; ++r) id[r] = static_cast<std::uint32_t>(r);
  g.perms_.push_back(id);
  index.emplace(std::move(id), 0);
  g.length_.push_back(0);
  std::vector<std::int64_t> parent{-1};
  std::vector<int> letter{-1};
  g.right_mult_.assign(static_cast<std::size_t>(n), 0);

  // FIFO over a dense index gives BFS; expanding s in index order makes the
  // recorded word for each element the lexicographically least reduced word.
  for (std::uint32_t w = 0; w < g.perms_.size(); ++w) {
    for (int s = 0; s < n; ++s) {
      auto t = compose(g.perms_[w], gen_perm[s]);
      auto it = index.find(t);
      std::uint32_t ti;
      if (it == index.end()) {
        ti = static_cast<std::uint32_t>(g.perms_.size());
        if (ti >= caps.element_cap)
          throw CapExceeded("group enumeration exceeded the element cap");
        g.perms_.push_back(t);
        index.emplace(std::move(t), ti);
        g.length_.push_back(g.length_[w] + 1);
        parent.push_back(w);
        letter.push_back(s);
        g.right_mult_.resize(static_cast<std::size_t>(ti + 1) * n);
      } else {
        ti = it->second;
      }
      g.right_mult_[static_cast<std::size_t>(w) * n + s] = ti;
    }
  }
  g.order_ = static_cast<std::uint32_t>(g.perms_.size());

  g.words_.resize(g.order_);
  for (std::uint32_t w = 0; w < g.order_; ++w) {
    std::vector<int> word;
    for (std::int64_t cur = w; parent[static_cast<std::size_t>(cur)] >= 0;
         cur = parent[static_cast<std::size_t>(cur)])
      word.push_back(letter[static_cast<std::size_t>(cur)]);
    std::reverse(word.begin(), word.end());
    internal_check(static_cast<int>(word.size()) == g.length_[w],
                   "stored word length disagrees with BFS depth");
    g.words_[w] = std::move(word);
  }

  g.inverse_.resize(g.order_);
  for (std::uint32_t w = 0; w < g.order_; ++w) {
    std::vector<std::uint32_t> inv(2 * N);
    for (int r = 0; r < 2 * N; ++r) inv[g.perms_[w][r]] = static_cast<std::uint32_t>(r);
    auto it = index.find(inv);
    internal_check(it != index.end(), "inverse permutation missing from the enumeration");
    g.inverse_[w] = it->second;
    internal_check(g.length_[g.inverse_[w]] == g.length_[w], "inverse changed length");
  }

  g.left_mult_.resize(static_cast<std::size_t>(g.order_) * n);
  for (std::uint32_t w = 0; w < g.order_; ++w)
    for (int s = 0; s < n; ++s)
      g.left_mult_[static_cast<std::size_t>(w) * n + s] =
          g.inverse_[g.right_mult_[static_cast<std::size_t>(g.inverse_[w]) * n + s]];

  // Descents via root negativity, cross-checked against BFS length steps.
  g.rdesc_.assign(g.order_, 0);
  g.ldesc_.assign(g.order_, 0);
  for (std::uint32_t w = 0; w < g.order_; ++w) {
    for (int s = 0; s < n; ++s) {
      bool neg = g.perms_[w][s] >= static_cast<std::uint32_t>(N);
      std::uint32_t ws = g.right_mult_[static_cast<std::size_t>(w) * n + s];
      int dl = g.length_[ws] - g.length_[w];
      internal_check(dl == 1 || dl == -1, "generator step changed length by something other than 1");
      internal_check(neg == (dl == -1), "root-negativity descent disagrees with length drop");
      if (neg) g.rdesc_[w] |= GenSet{1} << s;
    }
  }
  for (std::uint32_t w = 0; w < g.order_; ++w) g.ldesc_[w] = g.rdesc_[g.inverse_[w]];

  std::uint32_t top = 0;
  int seen_max = 0;
  for (std::uint32_t w = 0; w < g.order_; ++w) {
    if (g.length_[w] > g.length_[top]) {
      top = w;
      seen_max = 1;
    } else if (w != 0 && g.length_[w] == g.length_[top]) {
      ++seen_max;
    }
  }
  internal_check(seen_max == 1, "longest element is not unique");
  internal_check(g.length_[top] == N, "longest element length does not equal the root count");
  g.longest_ = ElementRef{top};

  return g;
}

void GroupTable::check_ref(ElementRef w) const {
  if (w.idx >= order_) throw std::invalid_argument("element index out of range");
}

int GroupTable::length(ElementRef w) const {
  check_ref(w);
  return length_[w.idx];
}

ElementRef GroupTable::mult(ElementRef w, int s, Side side) const {
  check_ref(w);
  if (s < 0 || s >= rank()) throw std::invalid_argument("generator index out of range");
  const auto& table = side == Side::right ? right_mult_ : left_mult_;
  return {table[static_cast<std::size_t>(w.idx) * rank() + s]};
}

ElementRef GroupTable::inverse(ElementRef w) const {
  check_ref(w);
  return {inverse_[w.idx]};
}

const std::vector<int>& GroupTable::reduced_word(ElementRef w) const {
  check_ref(w);
  return words_[w.idx];
}

GenSet GroupTable::descent_set(ElementRef w, Side side) const {
  check_ref(w);
  return side == Side::right ? rdesc_[w.idx] : ldesc_[w.idx];
}

bool GroupTable::has_descent(ElementRef w, int s, Side side) const {
  if (s < 0 || s >= rank()) throw std::invalid_argument("generator index out of range");
  return (descent_set(w, side) >> s) & 1;
}

std::vector<int> GroupTable::descents(ElementRef w, Side side) const {
  return genset_to_list(descent_set(w, side));
}

ElementRef GroupTable::evaluate_word(std::span<const int> word) const {
  ElementRef w = identity();
  for (int s : word) w = mult(w, s, Side::right);
  return w;
}

std::pair<ElementRef, std::vector<int>> GroupTable::reduce_word(std::span<const int> word) const {
  ElementRef w = evaluate_word(word);
  return {w, words_[w.idx]};
}

const std::vector<std::uint32_t>& GroupTable::root_perm(ElementRef w) const {
  check_ref(w);
  return perms_[w.idx];
}

std::string GroupTable::word_label(ElementRef w) const {
  check_ref(w);
  if (words_[w.idx].empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < words_[w.idx].size(); ++i) {
    if (i) out += ".";
    out += matrix_.generators[static_cast<std::size_t>(words_[w.idx][i])];
  }
  return out;
}

bool GroupTable::bruhat_leq_unlocked(std::uint32_t v, std::uint32_t w) const {
  if (v == w) return true;
  if (length_[v] >= length_[w]) return false;
  if (length_[v] == 0) return true;
  std::uint64_t key = static_cast<std::uint64_t>(v) * order_ + w;
  auto& memo = bruhat_cache_->memo;
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  // Lift along the lowest descent of w.
  int s = std::countr_zero(rdesc_[w]);
  std::uint32_t ws = right_mult_[static_cast<std::size_t>(w) * rank() + s];
  bool ans;
  if ((rdesc_[v] >> s) & 1)
    ans = bruhat_leq_unlocked(right_mult_[static_cast<std::size_t>(v) * rank() + s], ws);
  else
    ans = bruhat_leq_unlocked(v, ws);
  memo.emplace(key, ans);
  return ans;
}

bool GroupTable::bruhat_leq(ElementRef v, ElementRef w) const {
  check_ref(v);
  check_ref(w);
  std::lock_guard<std::mutex> lock(bruhat_cache_->mu);
  return bruhat_leq_unlocked(v.idx, w.idx);
}

FinitePoset GroupTable::bruhat_poset() const {
  std::vector<int> rank(order_);
  std::vector<std::string> labels(order_);
  for (std::uint32_t w = 0; w < order_; ++w) {
    rank[w] = length_[w];
    labels[w] = word_label({w});
  }
  return FinitePoset(
      static_cast<int>(order_),
      [this](int a, int b) {
        return bruhat_leq({static_cast<std::uint32_t>(a)}, {static_cast<std::uint32_t>(b)});
      },
      std::move(rank), std::move(labels));
}

FinitePoset GroupTable::two_sided_weak_poset() const {
  std::vector<std::vector<int>> up(order_);
  for (std::uint32_t w = 0; w < order_; ++w) {
    for (int s = 0; s < rank(); ++s) {
      std::uint32_t r = right_mult_[static_cast<std::size_t>(w) * rank() + s];
      if (length_[r] > length_[w]) up[w].push_back(static_cast<int>(r));
      std::uint32_t l = left_mult_[static_cast<std::size_t>(w) * rank() + s];
      if (length_[l] > length_[w]) up[w].push_back(static_cast<int>(l));
    }
    std::sort(up[w].begin(), up[w].end());
    up[w].erase(std::unique(up[w].begin(), up[w].end()), up[w].end());
  }
  std::vector<int> rank(order_);
  std::vector<std::string> labels(order_);
  for (std::uint32_t w = 0; w < order_; ++w) {
    rank[w] = length_[w];
    labels[w] = word_label({w});
  }
  return FinitePoset::from_cover_closure(static_cast<int>(order_), up, std::move(rank),
                                         std::move(labels));
}

}  // namespace coxtwist
