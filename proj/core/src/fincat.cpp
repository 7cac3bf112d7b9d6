#include "regclose/fincat.hpp"

#include <algorithm>

namespace regclose {
namespace {

std::uint64_t pair_key(int g, int f) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 32) |
         static_cast<std::uint32_t>(f);
}

}  // namespace

int FinCategory::Builder::add_object(std::string name) {
  int id = static_cast<int>(objects_.size());
  objects_.push_back(std::move(name));
  Morphism ident;
  ident.dom = id;
  ident.cod = id;
  int mid = static_cast<int>(morphisms_.size());
  morphisms_.push_back(ident);
  identities_.push_back(mid);
  return id;
}

int FinCategory::Builder::add_morphism(int dom, int cod) {
  Morphism m;
  m.dom = dom;
  m.cod = cod;
  morphisms_.push_back(m);
  return static_cast<int>(morphisms_.size()) - 1;
}

void FinCategory::Builder::set_composite(int g, int f, int gf) {
  table_[pair_key(g, f)] = gf;
}

int FinCategory::Builder::identity_of(int object) const {
  return identities_[static_cast<std::size_t>(object)];
}

FinCategory FinCategory::Builder::build() const {
  FinCategory c;
  c.object_names_ = objects_;
  c.morphisms_ = morphisms_;
  c.identities_ = identities_;
  c.table_ = table_;
  c.concrete_ = false;
  // identity composites are implied
  for (int f = 0; f < c.morphism_count(); ++f) {
    const auto& m = c.morphisms_[static_cast<std::size_t>(f)];
    c.table_[pair_key(c.identities_[static_cast<std::size_t>(m.cod)], f)] = f;
    c.table_[pair_key(f, c.identities_[static_cast<std::size_t>(m.dom)])] = f;
  }
  c.index();
  if (auto v = validate_category(c))
    throw InputError("category tables violate the " + v->law + " law");
  return c;
}

void FinCategory::index() {
  blocks_.assign(static_cast<std::size_t>(object_count()),
                 std::vector<std::vector<int>>(static_cast<std::size_t>(object_count())));
  for (int id = 0; id < morphism_count(); ++id) {
    const auto& m = morphisms_[static_cast<std::size_t>(id)];
    blocks_[static_cast<std::size_t>(m.dom)][static_cast<std::size_t>(m.cod)].push_back(id);
    if (m.concrete) graph_index_.emplace(graph_key(m.dom, m.cod, m.graph), id);
  }
}

std::string FinCategory::graph_key(int dom, int cod, const Graph& g) {
  std::string key;
  key.reserve(g.size() + 8);
  key += static_cast<char>(dom);
  key += static_cast<char>(cod);
  for (auto v : g) key += static_cast<char>(v);
  return key;
}

const std::vector<int>& FinCategory::hom(int dom, int cod) const {
  return blocks_[static_cast<std::size_t>(dom)][static_cast<std::size_t>(cod)];
}

bool FinCategory::composable(int g, int f) const {
  return morphisms_[static_cast<std::size_t>(f)].cod == morphisms_[static_cast<std::size_t>(g)].dom;
}

int FinCategory::compose(int g, int f) const {
  if (!composable(g, f)) throw InputError("compose: morphisms are not composable");
  if (concrete_) {
    const auto& mf = morphisms_[static_cast<std::size_t>(f)];
    const auto& mg = morphisms_[static_cast<std::size_t>(g)];
    Graph h(mf.graph.size());
    for (std::size_t i = 0; i < mf.graph.size(); ++i) h[i] = mg.graph[mf.graph[i]];
    auto it = graph_index_.find(graph_key(mf.dom, mg.cod, h));
    if (it == graph_index_.end())
      throw InputError("concrete category is not closed under composition");
    return it->second;
  }
  auto it = table_.find(pair_key(g, f));
  if (it == table_.end()) throw InputError("composition table has no entry for a composable pair");
  return it->second;
}

int FinCategory::find_concrete(int dom, int cod, const Graph& g) const {
  auto it = graph_index_.find(graph_key(dom, cod, g));
  return it == graph_index_.end() ? -1 : it->second;
}

FinCategory make_concrete_category(std::vector<std::string> object_names,
                                   std::vector<FinCategory::Morphism> morphisms,
                                   std::vector<int> identities) {
  FinCategory c;
  c.object_names_ = std::move(object_names);
  c.morphisms_ = std::move(morphisms);
  c.identities_ = std::move(identities);
  c.concrete_ = true;
  c.index();
  return c;
}

MorphismClass morphism_class(const FinCategory& c, int f) {
  if (f < 0 || f >= c.morphism_count()) throw InputError("unknown morphism id");
  const auto& m = c.morphism(f);
  MorphismClass out;

  // left cancellable: u |-> f.u is injective on every hom(T, dom f)
  out.mono = true;
  for (int t = 0; t < c.object_count() && out.mono; ++t) {
    std::unordered_map<int, int> seen;
    for (int u : c.hom(t, m.dom)) {
      auto [it, fresh] = seen.emplace(c.compose(f, u), u);
      if (!fresh) {
        out.mono = false;
        break;
      }
    }
  }
  out.epi = true;
  for (int t = 0; t < c.object_count() && out.epi; ++t) {
    std::unordered_map<int, int> seen;
    for (int u : c.hom(m.cod, t)) {
      auto [it, fresh] = seen.emplace(c.compose(u, f), u);
      if (!fresh) {
        out.epi = false;
        break;
      }
    }
  }
  for (int g : c.hom(m.cod, m.dom)) {
    if (c.compose(g, f) == c.identity(m.dom) && c.compose(f, g) == c.identity(m.cod)) {
      out.iso = true;
      break;
    }
  }
  return out;
}

UniversalCertificate verify_equalizer(const FinCategory& c, int e, int f, int g) {
  const auto& me = c.morphism(e);
  const auto& mf = c.morphism(f);
  const auto& mg = c.morphism(g);
  if (mf.dom != mg.dom || mf.cod != mg.cod || me.cod != mf.dom)
    throw InputError("verify_equalizer: maps do not form an equalizer diagram");

  UniversalCertificate cert{CertKind::Equalizer, false, std::nullopt};
  if (c.compose(f, e) != c.compose(g, e)) {
    cert.counterexample = CertCounterexample{CertFailure::NotCommuting, me.dom, {e}};
    return cert;
  }
  for (int t = 0; t < c.object_count(); ++t) {
    // mediators grouped by the fork they produce
    std::unordered_map<int, std::pair<int, int>> fork;  // e.u -> (count, first u)
    for (int u : c.hom(t, me.dom)) {
      auto [it, fresh] = fork.emplace(c.compose(e, u), std::make_pair(1, u));
      if (!fresh) it->second.first++;
    }
    for (int h : c.hom(t, mf.dom)) {
      if (c.compose(f, h) != c.compose(g, h)) continue;
      auto it = fork.find(h);
      if (it == fork.end()) {
        cert.counterexample = CertCounterexample{CertFailure::MediatorMissing, t, {h}};
        return cert;
      }
      if (it->second.first > 1) {
        cert.counterexample = CertCounterexample{CertFailure::MediatorNotUnique, t, {h}};
        return cert;
      }
    }
  }
  cert.verified = true;
  return cert;
}

UniversalCertificate verify_cokernel_pair(const FinCategory& c, int m, int i, int j) {
  const auto& mm = c.morphism(m);
  const auto& mi = c.morphism(i);
  const auto& mj = c.morphism(j);
  if (mi.dom != mm.cod || mj.dom != mm.cod || mi.cod != mj.cod)
    throw InputError("verify_cokernel_pair: maps do not form a cokernel-pair diagram");

  UniversalCertificate cert{CertKind::CokernelPair, false, std::nullopt};
  if (c.compose(i, m) != c.compose(j, m)) {
    cert.counterexample = CertCounterexample{CertFailure::NotCommuting, mm.dom, {i, j}};
    return cert;
  }
  const int apex = mi.cod;
  for (int t = 0; t < c.object_count(); ++t) {
    std::unordered_map<std::uint64_t, std::pair<int, int>> cofork;  // (u.i, u.j) -> count
    for (int u : c.hom(apex, t)) {
      std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.compose(u, i))) << 32) |
                          static_cast<std::uint32_t>(c.compose(u, j));
      auto [it, fresh] = cofork.emplace(key, std::make_pair(1, u));
      if (!fresh) it->second.first++;
    }
    for (int i2 : c.hom(mm.cod, t)) {
      for (int j2 : c.hom(mm.cod, t)) {
        if (c.compose(i2, m) != c.compose(j2, m)) continue;
        std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i2)) << 32) |
                            static_cast<std::uint32_t>(j2);
        auto it = cofork.find(key);
        if (it == cofork.end()) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorMissing, t, {i2, j2}};
          return cert;
        }
        if (it->second.first > 1) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorNotUnique, t, {i2, j2}};
          return cert;
        }
      }
    }
  }
  cert.verified = true;
  return cert;
}

UniversalCertificate verify_product(const FinCategory& c, int p, int q) {
  const auto& mp = c.morphism(p);
  const auto& mq = c.morphism(q);
  if (mp.dom != mq.dom) throw InputError("verify_product: projections must share a domain");

  UniversalCertificate cert{CertKind::Product, false, std::nullopt};
  for (int t = 0; t < c.object_count(); ++t) {
    std::unordered_map<std::uint64_t, std::pair<int, int>> cones;  // (p.u, q.u) -> count
    for (int u : c.hom(t, mp.dom)) {
      std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.compose(p, u))) << 32) |
                          static_cast<std::uint32_t>(c.compose(q, u));
      auto [it, fresh] = cones.emplace(key, std::make_pair(1, u));
      if (!fresh) it->second.first++;
    }
    for (int t1 : c.hom(t, mp.cod)) {
      for (int t2 : c.hom(t, mq.cod)) {
        std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t1)) << 32) |
                            static_cast<std::uint32_t>(t2);
        auto it = cones.find(key);
        if (it == cones.end()) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorMissing, t, {t1, t2}};
          return cert;
        }
        if (it->second.first > 1) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorNotUnique, t, {t1, t2}};
          return cert;
        }
      }
    }
  }
  cert.verified = true;
  return cert;
}

UniversalCertificate verify_pullback(const FinCategory& c, int p, int q, int f, int g) {
  const auto& mp = c.morphism(p);
  const auto& mq = c.morphism(q);
  const auto& mf = c.morphism(f);
  const auto& mg = c.morphism(g);
  if (mp.dom != mq.dom || mf.cod != mg.cod || mp.cod != mf.dom || mq.cod != mg.dom)
    throw InputError("verify_pullback: maps do not form a pullback square");

  UniversalCertificate cert{CertKind::Pullback, false, std::nullopt};
  if (c.compose(f, p) != c.compose(g, q)) {
    cert.counterexample = CertCounterexample{CertFailure::NotCommuting, mp.dom, {p, q}};
    return cert;
  }
  for (int t = 0; t < c.object_count(); ++t) {
    std::unordered_map<std::uint64_t, std::pair<int, int>> cones;
    for (int u : c.hom(t, mp.dom)) {
      std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.compose(p, u))) << 32) |
                          static_cast<std::uint32_t>(c.compose(q, u));
      auto [it, fresh] = cones.emplace(key, std::make_pair(1, u));
      if (!fresh) it->second.first++;
    }
    for (int t1 : c.hom(t, mf.dom)) {
      for (int t2 : c.hom(t, mg.dom)) {
        if (c.compose(f, t1) != c.compose(g, t2)) continue;
        std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t1)) << 32) |
                            static_cast<std::uint32_t>(t2);
        auto it = cones.find(key);
        if (it == cones.end()) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorMissing, t, {t1, t2}};
          return cert;
        }
        if (it->second.first > 1) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorNotUnique, t, {t1, t2}};
          return cert;
        }
      }
    }
  }
  cert.verified = true;
  return cert;
}

std::optional<int> search_equalizer(const FinCategory& c, int f, int g) {
  const auto& mf = c.morphism(f);
  const auto& mg = c.morphism(g);
  if (mf.dom != mg.dom || mf.cod != mg.cod) throw InputError("search_equalizer: maps not parallel");
  for (int e = 0; e < c.morphism_count(); ++e) {
    if (c.morphism(e).cod != mf.dom) continue;
    if (verify_equalizer(c, e, f, g).verified) return e;
  }
  return std::nullopt;
}

std::optional<CategoryViolation> validate_category(const FinCategory& c,
                                                   std::size_t triple_budget) {
  for (int o = 0; o < c.object_count(); ++o) {
    int id = c.identity(o);
    if (c.morphism(id).dom != o || c.morphism(id).cod != o)
      return CategoryViolation{"identity", {id}};
  }
  for (int f = 0; f < c.morphism_count(); ++f) {
    const auto& m = c.morphism(f);
    try {
      if (c.compose(c.identity(m.cod), f) != f || c.compose(f, c.identity(m.dom)) != f)
        return CategoryViolation{"identity", {f}};
    } catch (const InputError&) {
      return CategoryViolation{"closure", {f}};
    }
  }
  // closure over composable pairs
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (!c.composable(g, f)) continue;
      try {
        (void)c.compose(g, f);
      } catch (const InputError&) {
        return CategoryViolation{"closure", {g, f}};
      }
    }
  std::size_t triples = 0;
  for (int f = 0; f < c.morphism_count(); ++f) {
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (!c.composable(g, f)) continue;
      int gf = c.compose(g, f);
      for (int h = 0; h < c.morphism_count(); ++h) {
        if (!c.composable(h, g)) continue;
        if (++triples > triple_budget)
          throw InputError("validate_category: associativity budget exceeded");
        if (c.compose(c.compose(h, g), f) != c.compose(h, gf))
          return CategoryViolation{"associativity", {h, g, f}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace regclose
