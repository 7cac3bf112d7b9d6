#include "regclose/finspace.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>
#include <utility>

namespace regclose {
namespace {

// Opens of spaces materialized from a preorder are enumerated by a full
// subset sweep; beyond this point count the family is not materialized.
constexpr int kMaterializeLimit = 20;

std::string mask_to_string(Mask m, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (!has_bit(m, i)) continue;
    if (!first) out += ",";
    out += labels[static_cast<std::size_t>(i)];
    first = false;
  }
  return out + "}";
}

std::vector<std::string> default_labels(int n, const char* stem) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

// Appends primes until the candidate collides with nothing in `used`.
std::string uniquify(std::string candidate, std::set<std::string>& used) {
  while (used.count(candidate)) candidate += "'";
  used.insert(candidate);
  return candidate;
}

}  // namespace

bool Preorder::up_closed(Mask w) const {
  for (int x = 0; x < n; ++x)
    if (has_bit(w, x) && (up[static_cast<std::size_t>(x)] & ~w)) return false;
  return true;
}

bool Preorder::antisymmetric() const {
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (le(x, y) && le(y, x)) return false;
  return true;
}

bool Preorder::discrete() const {
  for (int x = 0; x < n; ++x)
    if (up[static_cast<std::size_t>(x)] != bit(x)) return false;
  return true;
}

bool Preorder::indiscrete() const {
  for (int x = 0; x < n; ++x)
    if (up[static_cast<std::size_t>(x)] != full()) return false;
  return true;
}

void Preorder::close_transitively() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      Mask m = up[static_cast<std::size_t>(x)];
      Mask grown = m;
      Mask rest = m;
      while (rest) {
        int y = std::countr_zero(rest);
        rest &= rest - 1;
        grown |= up[static_cast<std::size_t>(y)];
      }
      if (grown != m) {
        up[static_cast<std::size_t>(x)] = grown;
        changed = true;
      }
    }
  }
}

Preorder Preorder::from_opens(int n, const std::vector<Mask>& opens) {
  Preorder p;
  p.n = n;
  p.up.assign(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    Mask acc = p.full();
    for (Mask o : opens)
      if (has_bit(o, x)) acc &= o;
    p.up[static_cast<std::size_t>(x)] = acc;
  }
  return p;
}

Preorder Preorder::product(const Preorder& a, const Preorder& b) {
  if (a.n * b.n > kMaxPoints) throw InputError("product preorder exceeds the 64-point limit");
  Preorder p;
  p.n = a.n * b.n;
  p.up.assign(static_cast<std::size_t>(p.n), 0);
  for (int x = 0; x < a.n; ++x) {
    for (int y = 0; y < b.n; ++y) {
      Mask m = 0;
      Mask ra = a.up[static_cast<std::size_t>(x)];
      while (ra) {
        int x2 = std::countr_zero(ra);
        ra &= ra - 1;
        Mask rb = b.up[static_cast<std::size_t>(y)];
        while (rb) {
          int y2 = std::countr_zero(rb);
          rb &= rb - 1;
          m |= bit(x2 * b.n + y2);
        }
      }
      p.up[static_cast<std::size_t>(x * b.n + y)] = m;
    }
  }
  return p;
}

std::vector<int> Preorder::equivalence_partition(int* class_count) const {
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    if (cls[static_cast<std::size_t>(x)] >= 0) continue;
    cls[static_cast<std::size_t>(x)] = next;
    for (int y = x + 1; y < n; ++y)
      if (cls[static_cast<std::size_t>(y)] < 0 &&
          up[static_cast<std::size_t>(y)] == up[static_cast<std::size_t>(x)])
        cls[static_cast<std::size_t>(y)] = next;
    ++next;
  }
  if (class_count) *class_count = next;
  return cls;
}

std::vector<int> Preorder::component_partition(int* class_count) const {
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (le(x, y) || le(y, x)) parent[static_cast<std::size_t>(find(x))] = find(y);
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    int r = find(x);
    if (cls[static_cast<std::size_t>(r)] < 0) cls[static_cast<std::size_t>(r)] = next++;
    cls[static_cast<std::size_t>(x)] = cls[static_cast<std::size_t>(r)];
  }
  if (class_count) *class_count = next;
  return cls;
}

SelfPushout self_pushout(const Preorder& ambient, Mask carrier) {
  const int n = ambient.n;
  const int shared = popcount(carrier);
  const int rest = n - shared;
  const int apex_n = shared + 2 * rest;
  if (apex_n > kMaxPoints) throw InputError("cokernel-pair apex exceeds the 64-point limit");

  SelfPushout out;
  out.left.assign(static_cast<std::size_t>(n), -1);
  out.right.assign(static_cast<std::size_t>(n), -1);
  out.copy.assign(static_cast<std::size_t>(apex_n), 0);
  out.origin.assign(static_cast<std::size_t>(apex_n), -1);

  int next = 0;
  for (int x = 0; x < n; ++x) {
    if (!has_bit(carrier, x)) continue;
    out.left[static_cast<std::size_t>(x)] = next;
    out.right[static_cast<std::size_t>(x)] = next;
    out.copy[static_cast<std::size_t>(next)] = 0;
    out.origin[static_cast<std::size_t>(next)] = x;
    ++next;
  }
  for (int x = 0; x < n; ++x) {
    if (has_bit(carrier, x)) continue;
    out.left[static_cast<std::size_t>(x)] = next;
    out.copy[static_cast<std::size_t>(next)] = 1;
    out.origin[static_cast<std::size_t>(next)] = x;
    ++next;
  }
  for (int x = 0; x < n; ++x) {
    if (has_bit(carrier, x)) continue;
    out.right[static_cast<std::size_t>(x)] = next;
    out.copy[static_cast<std::size_t>(next)] = 2;
    out.origin[static_cast<std::size_t>(next)] = x;
    ++next;
  }

  out.apex.n = apex_n;
  out.apex.up.assign(static_cast<std::size_t>(apex_n), 0);
  for (int a = 0; a < apex_n; ++a) out.apex.up[static_cast<std::size_t>(a)] |= bit(a);
  for (int x = 0; x < n; ++x) {
    Mask r = ambient.up[static_cast<std::size_t>(x)];
    while (r) {
      int y = std::countr_zero(r);
      r &= r - 1;
      out.apex.up[static_cast<std::size_t>(out.left[static_cast<std::size_t>(x)])] |=
          bit(out.left[static_cast<std::size_t>(y)]);
      out.apex.up[static_cast<std::size_t>(out.right[static_cast<std::size_t>(x)])] |=
          bit(out.right[static_cast<std::size_t>(y)]);
    }
  }
  out.apex.close_transitively();
  return out;
}

FinSpace::FinSpace() : FinSpace(unchecked({}, {0}).d_) {}

FinSpace FinSpace::unchecked(std::vector<std::string> labels, std::vector<Mask> opens) {
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  auto d = std::make_shared<Data>();
  d->pre = Preorder::from_opens(static_cast<int>(labels.size()), opens);
  d->labels = std::move(labels);
  d->opens = std::move(opens);
  return FinSpace(std::move(d));
}

FinSpace FinSpace::validated(std::vector<std::string> labels, std::vector<Mask> opens) {
  const int n = static_cast<int>(labels.size());
  if (n > kMaxPoints) throw SpaceError("more than 64 points are not supported");
  {
    std::set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw SpaceError("duplicate point label: " + l);
  }
  const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  for (Mask o : opens)
    if (o & ~full) throw SpaceError("open set mentions a point outside the space");

  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());

  auto contains = [&](Mask m) { return std::binary_search(opens.begin(), opens.end(), m); };
  if (!contains(0)) throw SpaceError("axiom violated: the empty set is not open");
  if (!contains(full)) throw SpaceError("axiom violated: the full point set is not open");
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!contains(opens[i] | opens[j]))
        throw SpaceError("axiom violated: union of opens " + mask_to_string(opens[i], labels) +
                         " and " + mask_to_string(opens[j], labels) + " is not open");
      if (!contains(opens[i] & opens[j]))
        throw SpaceError("axiom violated: intersection of opens " +
                         mask_to_string(opens[i], labels) + " and " +
                         mask_to_string(opens[j], labels) + " is not open");
    }
  }
  return unchecked(std::move(labels), std::move(opens));
}

FinSpace FinSpace::from_preorder(const Preorder& pre, std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != pre.n)
    throw InputError("label count does not match the preorder");
  if (pre.n > kMaterializeLimit)
    throw InputError("refusing to materialize the open-set family of a " +
                     std::to_string(pre.n) + "-point space");
  std::vector<Mask> opens;
  const Mask full = pre.full();
  for (Mask w = 0;; ++w) {
    if (pre.up_closed(w)) opens.push_back(w);
    if (w == full) break;
  }
  return unchecked(std::move(labels), std::move(opens));
}

FinSpace FinSpace::empty_space() { return FinSpace(); }

FinSpace FinSpace::point() { return unchecked({"*"}, {0, 1}); }

FinSpace FinSpace::sierpinski() { return unchecked({"0", "1"}, {0, 2, 3}); }

FinSpace FinSpace::discrete(int n) {
  Preorder p;
  p.n = n;
  for (int i = 0; i < n; ++i) p.up.push_back(bit(i));
  return from_preorder(p, default_labels(n, "p"));
}

FinSpace FinSpace::indiscrete(int n) {
  std::vector<Mask> opens{0};
  if (n > 0) opens.push_back((Mask{1} << n) - 1);
  return unchecked(default_labels(n, "p"), std::move(opens));
}

int FinSpace::label_index(std::string_view label) const {
  for (int i = 0; i < size(); ++i)
    if (d_->labels[static_cast<std::size_t>(i)] == label) return i;
  return -1;
}

FinSpace FinSpace::subspace(Mask carrier) const {
  carrier &= full_mask();
  std::vector<int> idx;
  std::vector<std::string> labels;
  for (int i = 0; i < size(); ++i) {
    if (!has_bit(carrier, i)) continue;
    idx.push_back(i);
    labels.push_back(d_->labels[static_cast<std::size_t>(i)]);
  }
  std::vector<Mask> opens;
  opens.reserve(d_->opens.size());
  for (Mask o : d_->opens) {
    Mask t = 0;
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (has_bit(o, idx[k])) t |= bit(static_cast<int>(k));
    opens.push_back(t);
  }
  return unchecked(std::move(labels), std::move(opens));
}

bool FinSpace::operator==(const FinSpace& o) const {
  if (d_ == o.d_) return true;
  return d_->labels == o.d_->labels && d_->opens == o.d_->opens;
}

bool graph_continuous(const Preorder& dom, const Preorder& cod, const Graph& g) {
  for (int x = 0; x < dom.n; ++x) {
    Mask r = dom.up[static_cast<std::size_t>(x)];
    while (r) {
      int y = std::countr_zero(r);
      r &= r - 1;
      if (!cod.le(g[static_cast<std::size_t>(x)], g[static_cast<std::size_t>(y)])) return false;
    }
  }
  return true;
}

ContMap ContMap::checked(FinSpace dom, FinSpace cod, Graph g) {
  if (static_cast<int>(g.size()) != dom.size())
    throw InputError("map length does not match the domain");
  for (auto v : g)
    if (v >= cod.size()) throw InputError("map value outside the codomain");
  if (!graph_continuous(dom.preorder(), cod.preorder(), g))
    throw InputError("map is not continuous");
  return ContMap{std::move(dom), std::move(cod), std::move(g)};
}

ContMap ContMap::identity(const FinSpace& x) {
  Graph g(static_cast<std::size_t>(x.size()));
  for (int i = 0; i < x.size(); ++i) g[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  return ContMap{x, x, std::move(g)};
}

bool ContMap::injective() const {
  Mask seen = 0;
  for (auto v : map) {
    if (has_bit(seen, v)) return false;
    seen |= bit(v);
  }
  return true;
}

bool ContMap::surjective() const { return image_mask() == cod.full_mask(); }

bool ContMap::embedding() const {
  if (!injective()) return false;
  const Preorder& d = dom.preorder();
  const Preorder& c = cod.preorder();
  for (int x = 0; x < d.n; ++x)
    for (int y = 0; y < d.n; ++y)
      if (d.le(x, y) != c.le(map[static_cast<std::size_t>(x)], map[static_cast<std::size_t>(y)]))
        return false;
  return true;
}

Mask ContMap::image_mask() const {
  Mask m = 0;
  for (auto v : map) m |= bit(v);
  return m;
}

Mask ContMap::image_of(Mask sub) const {
  Mask m = 0;
  for (int i = 0; i < dom.size(); ++i)
    if (has_bit(sub, i)) m |= bit(map[static_cast<std::size_t>(i)]);
  return m;
}

Mask ContMap::preimage_of(Mask sub) const {
  Mask m = 0;
  for (int i = 0; i < dom.size(); ++i)
    if (has_bit(sub, map[static_cast<std::size_t>(i)])) m |= bit(i);
  return m;
}

bool ContMap::operator==(const ContMap& o) const {
  return map == o.map && dom == o.dom && cod == o.cod;
}

ContMap compose(const ContMap& g, const ContMap& f) {
  if (!(f.cod == g.dom)) throw InputError("compose: codomain/domain mismatch");
  Graph h(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i) h[i] = g.map[f.map[i]];
  return ContMap{f.dom, g.cod, std::move(h)};
}

ContMap Subobject::inclusion() const {
  FinSpace sub = subspace();
  Graph g;
  for (int i = 0; i < ambient.size(); ++i)
    if (has_bit(carrier, i)) g.push_back(static_cast<std::uint8_t>(i));
  return ContMap{std::move(sub), ambient, std::move(g)};
}

namespace {

// DFS enumeration of monotone maps in lexicographic order; nullopt on
// hitting the cap.
bool hom_dfs(const Preorder& dx, const Preorder& dy, Graph& g, int at,
             std::vector<Graph>& out, std::size_t cap, bool& overflow) {
  if (at == dx.n) {
    if (out.size() >= cap) {
      overflow = true;
      return false;
    }
    out.push_back(g);
    return true;
  }
  for (int v = 0; v < dy.n; ++v) {
    bool ok = true;
    for (int x = 0; x < at && ok; ++x) {
      if (dx.le(x, at) && !dy.le(g[static_cast<std::size_t>(x)], v)) ok = false;
      if (dx.le(at, x) && !dy.le(v, g[static_cast<std::size_t>(x)])) ok = false;
    }
    if (!ok) continue;
    g[static_cast<std::size_t>(at)] = static_cast<std::uint8_t>(v);
    if (!hom_dfs(dx, dy, g, at + 1, out, cap, overflow)) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<Graph>> hom_graphs_bounded(const Preorder& x, const Preorder& y,
                                                     std::size_t cap) {
  std::vector<Graph> out;
  if (x.n == 0) {
    out.push_back(Graph{});
    return out;
  }
  if (y.n == 0) return out;  // no map from a nonempty space into the empty one
  Graph g(static_cast<std::size_t>(x.n));
  bool overflow = false;
  hom_dfs(x, y, g, 0, out, cap, overflow);
  if (overflow) return std::nullopt;
  return out;
}

std::optional<std::vector<Graph>> hom_graphs_bounded(const FinSpace& x, const FinSpace& y,
                                                     std::size_t cap) {
  return hom_graphs_bounded(x.preorder(), y.preorder(), cap);
}

std::vector<Graph> hom_graphs(const FinSpace& x, const FinSpace& y) {
  auto r = hom_graphs_bounded(x, y, std::size_t{5'000'000});
  if (!r) throw InputError("hom-set enumeration budget exceeded");
  return std::move(*r);
}

std::vector<ContMap> hom_set(const FinSpace& x, const FinSpace& y) {
  std::vector<ContMap> out;
  for (auto& g : hom_graphs(x, y)) out.push_back(ContMap{x, y, std::move(g)});
  return out;
}

Product product(const FinSpace& x, const FinSpace& y) {
  Preorder pre = Preorder::product(x.preorder(), y.preorder());
  std::vector<std::string> labels;
  Graph pg, qg;
  labels.reserve(static_cast<std::size_t>(pre.n));
  for (int a = 0; a < x.size(); ++a) {
    for (int b = 0; b < y.size(); ++b) {
      labels.push_back("(" + x.labels()[static_cast<std::size_t>(a)] + "," +
                       y.labels()[static_cast<std::size_t>(b)] + ")");
      pg.push_back(static_cast<std::uint8_t>(a));
      qg.push_back(static_cast<std::uint8_t>(b));
    }
  }
  FinSpace space = FinSpace::from_preorder(pre, std::move(labels));
  return Product{space, ContMap{space, x, std::move(pg)}, ContMap{space, y, std::move(qg)}};
}

Subobject equalizer(const ContMap& h, const ContMap& k) {
  if (!(h.dom == k.dom) || !(h.cod == k.cod))
    throw InputError("equalizer: the maps are not parallel");
  Mask carrier = 0;
  for (int i = 0; i < h.dom.size(); ++i)
    if (h.map[static_cast<std::size_t>(i)] == k.map[static_cast<std::size_t>(i)])
      carrier |= bit(i);
  return Subobject{h.dom, carrier};
}

CokernelPair cokernel_pair(const Subobject& m) {
  const FinSpace& amb = m.ambient;
  SelfPushout po = self_pushout(amb.preorder(), m.carrier);

  std::set<std::string> used;
  std::vector<std::string> labels(static_cast<std::size_t>(po.apex.n));
  for (int a = 0; a < po.apex.n; ++a) {
    const std::string& base = amb.labels()[static_cast<std::size_t>(po.origin[static_cast<std::size_t>(a)])];
    std::string cand = base;
    if (po.copy[static_cast<std::size_t>(a)] == 1) cand += "#1";
    if (po.copy[static_cast<std::size_t>(a)] == 2) cand += "#2";
    labels[static_cast<std::size_t>(a)] = uniquify(std::move(cand), used);
  }
  FinSpace apex = FinSpace::from_preorder(po.apex, std::move(labels));

  Graph ig(static_cast<std::size_t>(amb.size())), jg(static_cast<std::size_t>(amb.size()));
  for (int x = 0; x < amb.size(); ++x) {
    ig[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(po.left[static_cast<std::size_t>(x)]);
    jg[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(po.right[static_cast<std::size_t>(x)]);
  }
  return CokernelPair{m, apex, ContMap{amb, apex, std::move(ig)}, ContMap{amb, apex, std::move(jg)}};
}

EpiMonoFactorization factorize(const ContMap& f) {
  Mask image = f.image_mask();
  Subobject mono{f.cod, image};
  FinSpace img = mono.subspace();
  // index of each codomain point within the image subspace
  std::vector<int> pos(static_cast<std::size_t>(f.cod.size()), -1);
  int k = 0;
  for (int i = 0; i < f.cod.size(); ++i)
    if (has_bit(image, i)) pos[static_cast<std::size_t>(i)] = k++;
  Graph eg(f.map.size());
  for (std::size_t i = 0; i < f.map.size(); ++i)
    eg[i] = static_cast<std::uint8_t>(pos[f.map[i]]);
  return EpiMonoFactorization{ContMap{f.dom, img, std::move(eg)}, mono};
}

Reflected t0_reflection(const FinSpace& x) {
  int classes = 0;
  std::vector<int> cls = x.preorder().equivalence_partition(&classes);

  Preorder q;
  q.n = classes;
  q.up.assign(static_cast<std::size_t>(classes), 0);
  for (int a = 0; a < x.size(); ++a) {
    Mask r = x.preorder().up[static_cast<std::size_t>(a)];
    while (r) {
      int b = std::countr_zero(r);
      r &= r - 1;
      q.up[static_cast<std::size_t>(cls[static_cast<std::size_t>(a)])] |=
          bit(cls[static_cast<std::size_t>(b)]);
    }
  }
  // already transitive: equivalent points share their up-sets
  std::set<std::string> used;
  std::vector<std::string> labels(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    std::string joined;
    for (int a = 0; a < x.size(); ++a) {
      if (cls[static_cast<std::size_t>(a)] != c) continue;
      if (!joined.empty()) joined += "+";
      joined += x.labels()[static_cast<std::size_t>(a)];
    }
    labels[static_cast<std::size_t>(c)] = uniquify(std::move(joined), used);
  }
  FinSpace target = FinSpace::from_preorder(q, std::move(labels));
  Graph g(static_cast<std::size_t>(x.size()));
  for (int a = 0; a < x.size(); ++a)
    g[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(cls[static_cast<std::size_t>(a)]);
  return Reflected{ContMap{x, target, std::move(g)}, target};
}

PullbackResult pullback(const ContMap& f, const ContMap& g) {
  if (!(f.cod == g.cod)) throw InputError("pullback: the maps must share a codomain");
  Product pr = product(f.dom, g.dom);
  Mask carrier = 0;
  for (int a = 0; a < f.dom.size(); ++a)
    for (int b = 0; b < g.dom.size(); ++b)
      if (f.map[static_cast<std::size_t>(a)] == g.map[static_cast<std::size_t>(b)])
        carrier |= bit(a * g.dom.size() + b);
  Subobject sub{pr.space, carrier};
  ContMap incl = sub.inclusion();
  return PullbackResult{sub, compose(pr.p, incl), compose(pr.q, incl)};
}

}  // namespace regclose
