#include "regclose/export_cat.hpp"

#include <map>
#include <string>
#include <unordered_map>

namespace regclose {
namespace {

std::string graph_bytes(const Graph& g) {
  return std::string(g.begin(), g.end());
}

}  // namespace

int ExportedCategory::object_of(const FinSpace& x) const {
  for (std::size_t i = 0; i < spaces.size(); ++i)
    if (spaces[i] == x) return static_cast<int>(i);
  return -1;
}

int ExportedCategory::morphism_id(const ContMap& f) const {
  int d = object_of(f.dom);
  int c = object_of(f.cod);
  if (d < 0 || c < 0) return -1;
  return cat.find_concrete(d, c, f.map);
}

ContMap ExportedCategory::as_map(int morphism_id) const {
  const auto& m = cat.morphism(morphism_id);
  return ContMap{spaces[static_cast<std::size_t>(m.dom)],
                 spaces[static_cast<std::size_t>(m.cod)], m.graph};
}

ExportedCategory export_category(const std::vector<FinSpace>& spaces,
                                 std::size_t morphism_budget) {
  std::vector<FinCategory::Morphism> morphisms;
  std::vector<int> identities(spaces.size(), -1);

  for (int d = 0; d < static_cast<int>(spaces.size()); ++d) {
    for (int c = 0; c < static_cast<int>(spaces.size()); ++c) {
      if (morphisms.size() >= morphism_budget)
        throw InputError("export_category: morphism budget exceeded");
      auto graphs = hom_graphs_bounded(spaces[static_cast<std::size_t>(d)],
                                       spaces[static_cast<std::size_t>(c)],
                                       morphism_budget - morphisms.size());
      if (!graphs) throw InputError("export_category: morphism budget exceeded");
      for (auto& g : *graphs) {
        FinCategory::Morphism m;
        m.dom = d;
        m.cod = c;
        m.concrete = true;
        if (d == c && identities[static_cast<std::size_t>(d)] < 0) {
          bool ident = true;
          for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] != i) {
              ident = false;
              break;
            }
          if (ident) identities[static_cast<std::size_t>(d)] = static_cast<int>(morphisms.size());
        }
        m.graph = std::move(g);
        morphisms.push_back(std::move(m));
      }
    }
  }

  std::vector<std::string> names;
  for (const auto& s : spaces) {
    std::string n = "[" + std::to_string(s.size()) + "pt";
    for (const auto& l : s.labels()) n += ":" + l;
    names.push_back(n + "]");
  }
  ExportedCategory out{make_concrete_category(std::move(names), std::move(morphisms),
                                              std::move(identities)),
                       spaces};
  return out;
}

namespace {

struct GraphPairHash {
  std::size_t operator()(const std::pair<std::string, std::string>& p) const {
    std::hash<std::string> h;
    return h(p.first) * 1000003u ^ h(p.second);
  }
};

Graph compose_graphs(const Graph& g, const Graph& f) {
  Graph out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
  return out;
}

}  // namespace

UniversalCertificate verify_equalizer_direct(const Subobject& e, const ContMap& h,
                                             const ContMap& k,
                                             const std::vector<FinSpace>& tests) {
  UniversalCertificate cert{CertKind::Equalizer, false, std::nullopt};
  if (!(h.dom == k.dom) || !(h.cod == k.cod) || !(e.ambient == h.dom))
    throw InputError("verify_equalizer_direct: maps do not form an equalizer diagram");
  ContMap incl = e.inclusion();
  if (!(compose(h, incl).map == compose(k, incl).map)) {
    cert.counterexample = CertCounterexample{CertFailure::NotCommuting, -1, {}};
    return cert;
  }
  FinSpace dom = incl.dom;
  for (int t = 0; t < static_cast<int>(tests.size()); ++t) {
    auto into_e = hom_graphs(tests[static_cast<std::size_t>(t)], dom);
    std::unordered_map<std::string, int> fork;  // incl.u bytes -> count
    for (const auto& u : into_e) fork[graph_bytes(compose_graphs(incl.map, u))]++;
    for (const auto& cand : hom_graphs(tests[static_cast<std::size_t>(t)], h.dom)) {
      bool equalizes = true;
      for (auto v : cand)
        if (h.map[v] != k.map[v]) {
          equalizes = false;
          break;
        }
      if (!equalizes) continue;
      auto it = fork.find(graph_bytes(cand));
      if (it == fork.end()) {
        cert.counterexample = CertCounterexample{CertFailure::MediatorMissing, t, {}};
        return cert;
      }
      if (it->second > 1) {
        cert.counterexample = CertCounterexample{CertFailure::MediatorNotUnique, t, {}};
        return cert;
      }
    }
  }
  cert.verified = true;
  return cert;
}

UniversalCertificate verify_cokernel_pair_direct(const CokernelPair& cp,
                                                 const std::vector<FinSpace>& tests) {
  UniversalCertificate cert{CertKind::CokernelPair, false, std::nullopt};
  ContMap incl = cp.source.inclusion();
  if (!(compose(cp.left, incl).map == compose(cp.right, incl).map)) {
    cert.counterexample = CertCounterexample{CertFailure::NotCommuting, -1, {}};
    return cert;
  }
  const FinSpace& x = cp.source.ambient;
  for (int t = 0; t < static_cast<int>(tests.size()); ++t) {
    const FinSpace& target = tests[static_cast<std::size_t>(t)];
    auto from_apex = hom_graphs(cp.apex, target);
    std::unordered_map<std::string, int> cofork;  // (u.i || u.j) -> count
    for (const auto& u : from_apex) {
      std::string key = graph_bytes(compose_graphs(u, cp.left.map));
      key += '|';
      key += graph_bytes(compose_graphs(u, cp.right.map));
      cofork[key]++;
    }
    auto from_x = hom_graphs(x, target);
    for (const auto& i2 : from_x) {
      for (const auto& j2 : from_x) {
        bool agrees = true;
        for (int p = 0; p < x.size() && agrees; ++p)
          if (has_bit(cp.source.carrier, p) && i2[static_cast<std::size_t>(p)] != j2[static_cast<std::size_t>(p)])
            agrees = false;
        if (!agrees) continue;
        std::string key = graph_bytes(i2);
        key += '|';
        key += graph_bytes(j2);
        auto it = cofork.find(key);
        if (it == cofork.end()) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorMissing, t, {}};
          return cert;
        }
        if (it->second > 1) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorNotUnique, t, {}};
          return cert;
        }
      }
    }
  }
  cert.verified = true;
  return cert;
}

UniversalCertificate verify_product_direct(const Product& pr,
                                           const std::vector<FinSpace>& tests) {
  UniversalCertificate cert{CertKind::Product, false, std::nullopt};
  for (int t = 0; t < static_cast<int>(tests.size()); ++t) {
    const FinSpace& test = tests[static_cast<std::size_t>(t)];
    std::unordered_map<std::string, int> cones;
    for (const auto& u : hom_graphs(test, pr.space)) {
      std::string key = graph_bytes(compose_graphs(pr.p.map, u));
      key += '|';
      key += graph_bytes(compose_graphs(pr.q.map, u));
      cones[key]++;
    }
    for (const auto& t1 : hom_graphs(test, pr.p.cod)) {
      for (const auto& t2 : hom_graphs(test, pr.q.cod)) {
        std::string key = graph_bytes(t1);
        key += '|';
        key += graph_bytes(t2);
        auto it = cones.find(key);
        if (it == cones.end()) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorMissing, t, {}};
          return cert;
        }
        if (it->second > 1) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorNotUnique, t, {}};
          return cert;
        }
      }
    }
  }
  cert.verified = true;
  return cert;
}

UniversalCertificate verify_pullback_direct(const PullbackResult& pb, const ContMap& f,
                                            const ContMap& g,
                                            const std::vector<FinSpace>& tests) {
  UniversalCertificate cert{CertKind::Pullback, false, std::nullopt};
  if (!(compose(f, pb.p).map == compose(g, pb.q).map)) {
    cert.counterexample = CertCounterexample{CertFailure::NotCommuting, -1, {}};
    return cert;
  }
  FinSpace apex = pb.p.dom;
  for (int t = 0; t < static_cast<int>(tests.size()); ++t) {
    const FinSpace& test = tests[static_cast<std::size_t>(t)];
    std::unordered_map<std::string, int> cones;
    for (const auto& u : hom_graphs(test, apex)) {
      std::string key = graph_bytes(compose_graphs(pb.p.map, u));
      key += '|';
      key += graph_bytes(compose_graphs(pb.q.map, u));
      cones[key]++;
    }
    for (const auto& t1 : hom_graphs(test, f.dom)) {
      for (const auto& t2 : hom_graphs(test, g.dom)) {
        bool commutes = true;
        for (int p = 0; p < test.size() && commutes; ++p)
          if (f.map[t1[static_cast<std::size_t>(p)]] != g.map[t2[static_cast<std::size_t>(p)]])
            commutes = false;
        if (!commutes) continue;
        std::string key = graph_bytes(t1);
        key += '|';
        key += graph_bytes(t2);
        auto it = cones.find(key);
        if (it == cones.end()) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorMissing, t, {}};
          return cert;
        }
        if (it->second > 1) {
          cert.counterexample = CertCounterexample{CertFailure::MediatorNotUnique, t, {}};
          return cert;
        }
      }
    }
  }
  cert.verified = true;
  return cert;
}

}  // namespace regclose
