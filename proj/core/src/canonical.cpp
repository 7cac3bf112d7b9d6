#include "regclose/canonical.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace regclose {
namespace {

std::uint64_t fnv(std::uint64_t h, std::uint64_t v) {
  h ^= v;
  return h * 0x100000001b3ull;
}

// Iterated neighbourhood refinement; the resulting per-point keys are
// isomorphism-invariant, so restricting the permutation search to
// key-respecting orderings preserves the canonical minimum.
std::vector<std::uint64_t> refinement_keys(const Preorder& p) {
  std::vector<std::uint64_t> key(static_cast<std::size_t>(p.n));
  for (int x = 0; x < p.n; ++x) {
    int down = 0;
    for (int y = 0; y < p.n; ++y)
      if (p.le(y, x)) ++down;
    key[static_cast<std::size_t>(x)] =
        fnv(fnv(0xcbf29ce484222325ull, static_cast<std::uint64_t>(popcount(p.up[static_cast<std::size_t>(x)]))),
            static_cast<std::uint64_t>(down));
  }
  for (int round = 0; round < 2; ++round) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(p.n));
    for (int x = 0; x < p.n; ++x) {
      std::vector<std::uint64_t> ups, downs;
      for (int y = 0; y < p.n; ++y) {
        if (y == x) continue;
        if (p.le(x, y)) ups.push_back(key[static_cast<std::size_t>(y)]);
        if (p.le(y, x)) downs.push_back(key[static_cast<std::size_t>(y)]);
      }
      std::sort(ups.begin(), ups.end());
      std::sort(downs.begin(), downs.end());
      std::uint64_t h = fnv(0xcbf29ce484222325ull, key[static_cast<std::size_t>(x)]);
      for (auto v : ups) h = fnv(h, v);
      h = fnv(h, 0x9e3779b97f4a7c15ull);
      for (auto v : downs) h = fnv(h, v);
      next[static_cast<std::size_t>(x)] = h;
    }
    key = std::move(next);
  }
  return key;
}

std::vector<Mask> matrix_under_order(const Preorder& p, const std::vector<int>& ord) {
  std::vector<Mask> rows(static_cast<std::size_t>(p.n), 0);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (p.le(ord[static_cast<std::size_t>(i)], ord[static_cast<std::size_t>(j)]))
        rows[static_cast<std::size_t>(i)] |= bit(j);
  return rows;
}

// Minimal matrix over key-respecting orderings; `ord_out` receives the
// minimizing ordering (new index -> old index).
std::vector<Mask> minimal_matrix(const Preorder& p, std::vector<int>* ord_out) {
  const int n = p.n;
  std::vector<int> ord(static_cast<std::size_t>(n));
  std::iota(ord.begin(), ord.end(), 0);
  if (n == 0) {
    if (ord_out) *ord_out = ord;
    return {};
  }

  auto keys = refinement_keys(p);
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });

  // group boundaries of equal keys
  std::vector<std::pair<int, int>> groups;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && keys[static_cast<std::size_t>(ord[static_cast<std::size_t>(j)])] ==
                        keys[static_cast<std::size_t>(ord[static_cast<std::size_t>(i)])])
      ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  for (auto [b, e] : groups) std::sort(ord.begin() + b, ord.begin() + e);

  std::vector<Mask> best = matrix_under_order(p, ord);
  std::vector<int> best_ord = ord;

  // odometer over within-group permutations
  std::vector<int> work = ord;
  auto advance = [&]() {
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
      if (std::next_permutation(work.begin() + it->first, work.begin() + it->second)) return true;
      std::sort(work.begin() + it->first, work.begin() + it->second);
    }
    return false;
  };
  while (advance()) {
    std::vector<Mask> m = matrix_under_order(p, work);
    if (m < best) {
      best = std::move(m);
      best_ord = work;
    }
  }
  if (ord_out) *ord_out = best_ord;
  return best;
}

std::string encode(int n, const std::vector<Mask>& rows) {
  static const char* hex = "0123456789abcdef";
  std::string s = std::to_string(n) + ";";
  for (Mask r : rows) {
    int digits = (n + 3) / 4;
    for (int d = digits - 1; d >= 0; --d) s += hex[(r >> (4 * d)) & 0xf];
    s += ".";
  }
  return s;
}

std::vector<std::string> point_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

bool iso_by_perm_search(const Preorder& a, const Preorder& b) {
  if (a.n != b.n) return false;
  std::vector<int> perm(static_cast<std::size_t>(a.n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < a.n && ok; ++x)
      for (int y = 0; y < a.n && ok; ++y)
        if (a.le(x, y) != b.le(perm[static_cast<std::size_t>(x)], perm[static_cast<std::size_t>(y)]))
          ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::string space_value_key(const FinSpace& x) {
  std::string s;
  for (const auto& l : x.labels()) s += l + "\x1f";
  s += "|";
  for (Mask o : x.opens()) s += std::to_string(o) + ",";
  return s;
}

}  // namespace

int configured_max_points() {
  if (const char* env = std::getenv("REGCLOSE_MAX_POINTS")) {
    int v = std::atoi(env);
    if (v >= 0) return std::min(v, kHardMaxPoints);
  }
  return kDefaultMaxPoints;
}

std::string canonical_form(const FinSpace& x) {
  if (x.size() > 12) throw InputError("canonical form is limited to 12 points");
  return encode(x.size(), minimal_matrix(x.preorder(), nullptr));
}

std::vector<int> canonical_permutation(const FinSpace& x) {
  if (x.size() > 12) throw InputError("canonical form is limited to 12 points");
  std::vector<int> ord;
  minimal_matrix(x.preorder(), &ord);
  std::vector<int> perm(ord.size());
  for (std::size_t k = 0; k < ord.size(); ++k) perm[static_cast<std::size_t>(ord[k])] = static_cast<int>(k);
  return perm;
}

std::optional<Graph> find_homeomorphism(const FinSpace& x, const FinSpace& y) {
  if (x.size() != y.size()) return std::nullopt;
  std::vector<int> ox, oy;
  auto mx = minimal_matrix(x.preorder(), &ox);
  auto my = minimal_matrix(y.preorder(), &oy);
  if (mx != my) return std::nullopt;
  // x's point at canonical slot k corresponds to y's point at the same slot
  Graph g(static_cast<std::size_t>(x.size()));
  for (std::size_t k = 0; k < ox.size(); ++k)
    g[static_cast<std::size_t>(ox[k])] = static_cast<std::uint8_t>(oy[k]);
  return g;
}

std::vector<FinSpace> enumerate_spaces(int n, int limit) {
  if (limit < 0) limit = configured_max_points();
  if (n > limit || n > kHardMaxPoints)
    throw InputError("enumerate_spaces: " + std::to_string(n) +
                     " points exceeds the configured maximum of " + std::to_string(limit));
  if (n < 0) throw InputError("enumerate_spaces: negative point count");
  if (n == 0) return {FinSpace::empty_space()};

  std::map<std::string, FinSpace> reps;

  for (int k = 1; k <= n; ++k) {
    const int pairs = k * (k - 1) / 2;
    // pair rank of (i, j), i < j
    auto rank = [&](int i, int j) { return i * k - i * (i + 1) / 2 + (j - i - 1); };
    for (std::uint32_t rel = 0; rel < (1u << pairs); ++rel) {
      auto related = [&](int i, int j) { return (rel >> rank(i, j)) & 1u; };
      bool transitive = true;
      for (int i = 0; i < k && transitive; ++i)
        for (int j = i + 1; j < k && transitive; ++j)
          for (int l = j + 1; l < k && transitive; ++l)
            if (related(i, j) && related(j, l) && !related(i, l)) transitive = false;
      if (!transitive) continue;

      auto emit = [&](const std::vector<int>& sz) {
        std::vector<int> cls;
        for (int c = 0; c < k; ++c)
          for (int t = 0; t < sz[static_cast<std::size_t>(c)]; ++t) cls.push_back(c);
        Preorder p;
        p.n = n;
        p.up.assign(static_cast<std::size_t>(n), 0);
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) {
            int cx = cls[static_cast<std::size_t>(x)], cy = cls[static_cast<std::size_t>(y)];
            if (cx == cy || (cx < cy && related(cx, cy)))
              p.up[static_cast<std::size_t>(x)] |= bit(y);
          }
        auto m = minimal_matrix(p, nullptr);
        std::string form = encode(n, m);
        if (reps.count(form)) return;
        Preorder cp;
        cp.n = n;
        cp.up = m;
        reps.emplace(std::move(form), FinSpace::from_preorder(cp, point_labels(n)));
      };
      // iterate all compositions of n into k positive parts
      std::vector<int> cur(static_cast<std::size_t>(k), 0);
      auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == k - 1) {
          cur[static_cast<std::size_t>(pos)] = left;
          emit(cur);
          return;
        }
        for (int s = 1; s <= left - (k - 1 - pos); ++s) {
          cur[static_cast<std::size_t>(pos)] = s;
          self(self, pos + 1, left - s);
        }
      };
      rec(rec, 0, n);
    }
  }

  std::vector<FinSpace> out;
  out.reserve(reps.size());
  for (auto& [form, sp] : reps) out.push_back(sp);
  return out;
}

int count_classes_by_iso_search(const std::vector<FinSpace>& candidates) {
  std::vector<const FinSpace*> reps;
  for (const auto& c : candidates) {
    bool found = false;
    for (const FinSpace* r : reps)
      if (iso_by_perm_search(c.preorder(), r->preorder())) {
        found = true;
        break;
      }
    if (!found) reps.push_back(&c);
  }
  return static_cast<int>(reps.size());
}

const std::vector<FinSpace>& Workspace::spaces_of_size(int n) {
  auto it = by_size_.find(n);
  if (it == by_size_.end()) {
    it = by_size_.emplace(n, enumerate_spaces(n, limit_)).first;
    for (const auto& s : it->second) owned_.insert(static_cast<const void*>(&s.labels()));
  }
  return it->second;
}

std::vector<FinSpace> Workspace::universe(int max_points) {
  std::vector<FinSpace> out;
  for (int n = 0; n <= max_points; ++n)
    for (const auto& s : spaces_of_size(n)) out.push_back(s);
  return out;
}

const std::vector<Graph>& Workspace::homs(const FinSpace& x, const FinSpace& y) {
  const void* kx = static_cast<const void*>(&x.labels());
  const void* ky = static_cast<const void*>(&y.labels());
  if (owned_.count(kx) && owned_.count(ky)) {
    auto key = std::make_pair(kx, ky);
    auto it = hom_cache_.find(key);
    if (it == hom_cache_.end()) it = hom_cache_.emplace(key, hom_graphs(x, y)).first;
    return it->second;
  }
  auto key = std::make_pair(space_value_key(x), space_value_key(y));
  auto it = foreign_cache_.find(key);
  if (it == foreign_cache_.end()) it = foreign_cache_.emplace(key, hom_graphs(x, y)).first;
  return it->second;
}

}  // namespace regclose
