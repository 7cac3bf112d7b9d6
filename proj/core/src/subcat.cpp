#include "regclose/subcat.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace regclose {
namespace {

constexpr std::size_t kSehEnumerationCap = 200'000;
constexpr std::size_t kExtensionBudget = 20'000'000;

std::string uniquify(std::string candidate, std::set<std::string>& used) {
  while (used.count(candidate)) candidate += "'";
  used.insert(candidate);
  return candidate;
}

std::vector<std::string> class_labels(const std::vector<std::string>& point_labels,
                                      const Partition& part) {
  std::set<std::string> used;
  std::vector<std::string> out(static_cast<std::size_t>(part.count));
  for (int c = 0; c < part.count; ++c) {
    std::string joined;
    for (std::size_t i = 0; i < part.cls.size(); ++i) {
      if (part.cls[i] != c) continue;
      if (!joined.empty()) joined += "+";
      joined += point_labels[i];
    }
    out[static_cast<std::size_t>(c)] = uniquify(std::move(joined), used);
  }
  return out;
}

Partition identity_partition(int n) {
  Partition p;
  p.count = n;
  p.cls.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p.cls[static_cast<std::size_t>(i)] = i;
  return p;
}

// Depth-first search for a monotone map dom -> gen extending f(x)=a, f(y)=b.
// Assignment order is x, y, then the remaining points.
class ExtensionSearch {
 public:
  ExtensionSearch(const Preorder& dom, const Preorder& gen) : dom_(dom), gen_(gen) {
    assign_.assign(static_cast<std::size_t>(dom.n), -1);
  }

  bool exists(int x, int a, int y, int b, std::size_t* budget) {
    order_.clear();
    order_.push_back(x);
    if (y != x) order_.push_back(y);
    for (int i = 0; i < dom_.n; ++i)
      if (i != x && i != y) order_.push_back(i);
    std::fill(assign_.begin(), assign_.end(), -1);
    if (!consistent(x, a)) return false;
    assign_[static_cast<std::size_t>(x)] = a;
    if (y != x) {
      if (!consistent(y, b)) {
        assign_[static_cast<std::size_t>(x)] = -1;
        return false;
      }
      assign_[static_cast<std::size_t>(y)] = b;
    } else if (a != b) {
      assign_[static_cast<std::size_t>(x)] = -1;
      return false;
    }
    bool found = dfs(y != x ? 2 : 1, budget);
    std::fill(assign_.begin(), assign_.end(), -1);
    return found;
  }

 private:
  bool consistent(int p, int v) const {
    for (int q = 0; q < dom_.n; ++q) {
      int w = assign_[static_cast<std::size_t>(q)];
      if (w < 0) continue;
      if (dom_.le(p, q) && !gen_.le(v, w)) return false;
      if (dom_.le(q, p) && !gen_.le(w, v)) return false;
    }
    return true;
  }

  bool dfs(std::size_t depth, std::size_t* budget) {
    if (depth == order_.size()) return true;
    int p = order_[depth];
    for (int v = 0; v < gen_.n; ++v) {
      if (*budget == 0)
        throw InputError("separation search budget exceeded; the space is too large");
      --*budget;
      if (!consistent(p, v)) continue;
      assign_[static_cast<std::size_t>(p)] = v;
      if (dfs(depth + 1, budget)) {
        assign_[static_cast<std::size_t>(p)] = -1;
        return true;
      }
      assign_[static_cast<std::size_t>(p)] = -1;
    }
    return false;
  }

  const Preorder& dom_;
  const Preorder& gen_;
  std::vector<int> order_;
  std::vector<int> assign_;
};

SehSeparation seh_separation_by_search(const Preorder& p, const std::vector<FinSpace>& gens) {
  const int n = p.n;
  std::size_t budget = kExtensionBudget;

  // sep_le[x][y]: no generator-valued map sends x strictly above y
  std::vector<Mask> sep_up(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      bool le = true;
      for (const auto& g : gens) {
        const Preorder& gp = g.preorder();
        ExtensionSearch search(p, gp);
        for (int a = 0; a < gp.n && le; ++a)
          for (int b = 0; b < gp.n && le; ++b) {
            if (gp.le(a, b)) continue;
            if (search.exists(x, a, y, b, &budget)) le = false;
          }
        if (!le) break;
      }
      if (le) sep_up[static_cast<std::size_t>(x)] |= bit(y);
    }
  }

  SehSeparation out;
  out.sep_order.n = n;
  out.sep_order.up = std::move(sep_up);
  // kernel classes are the symmetric part of the separation order
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    if (cls[static_cast<std::size_t>(x)] >= 0) continue;
    cls[static_cast<std::size_t>(x)] = next;
    for (int y = x + 1; y < n; ++y)
      if (cls[static_cast<std::size_t>(y)] < 0 && out.sep_order.le(x, y) && out.sep_order.le(y, x))
        cls[static_cast<std::size_t>(y)] = next;
    ++next;
  }
  out.kernel.cls = std::move(cls);
  out.kernel.count = next;
  return out;
}

}  // namespace

SehSeparation seh_separation(const Preorder& p, const std::vector<FinSpace>& gens) {
  const int n = p.n;
  // enumeration path: materialize every generator-valued map
  std::vector<std::pair<const Preorder*, std::vector<Graph>>> families;
  std::size_t left = kSehEnumerationCap;
  bool enumerable = true;
  for (const auto& g : gens) {
    auto homs = hom_graphs_bounded(p, g.preorder(), left);
    if (!homs) {
      enumerable = false;
      break;
    }
    left -= homs->size();
    families.emplace_back(&g.preorder(), std::move(*homs));
  }
  if (!enumerable) return seh_separation_by_search(p, gens);

  SehSeparation out;
  out.sep_order.n = n;
  out.sep_order.up.assign(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      bool le = true;
      for (const auto& [gp, maps] : families) {
        for (const auto& f : maps)
          if (!gp->le(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)])) {
            le = false;
            break;
          }
        if (!le) break;
      }
      if (le) out.sep_order.up[static_cast<std::size_t>(x)] |= bit(y);
    }
  }
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    if (cls[static_cast<std::size_t>(x)] >= 0) continue;
    cls[static_cast<std::size_t>(x)] = next;
    for (int y = x + 1; y < n; ++y)
      if (cls[static_cast<std::size_t>(y)] < 0 && out.sep_order.le(x, y) && out.sep_order.le(y, x))
        cls[static_cast<std::size_t>(y)] = next;
    ++next;
  }
  out.kernel.cls = std::move(cls);
  out.kernel.count = next;
  return out;
}

Reflection seh_reflection(const FinSpace& x, const std::vector<FinSpace>& gens) {
  if (gens.empty()) throw InputError("seh_reflection: empty generator list");
  SehSeparation sep = seh_separation(x.preorder(), gens);

  // class-level separation order; well-defined since equivalent points have
  // identical rows
  Preorder q;
  q.n = sep.kernel.count;
  q.up.assign(static_cast<std::size_t>(q.n), 0);
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < x.size(); ++b)
      if (sep.sep_order.le(a, b))
        q.up[static_cast<std::size_t>(sep.kernel.cls[static_cast<std::size_t>(a)])] |=
            bit(sep.kernel.cls[static_cast<std::size_t>(b)]);

  FinSpace target = FinSpace::from_preorder(q, class_labels(x.labels(), sep.kernel));
  Graph g(static_cast<std::size_t>(x.size()));
  for (int a = 0; a < x.size(); ++a)
    g[static_cast<std::size_t>(a)] =
        static_cast<std::uint8_t>(sep.kernel.cls[static_cast<std::size_t>(a)]);
  return Reflection{x, ContMap::checked(x, target, std::move(g)), target, false};
}

SubcatSpec SubcatSpec::all() {
  SubcatSpec s;
  s.name_ = "all";
  s.kind_ = Kind::Builtin;
  s.builtin_ = Builtin::All;
  return s;
}

SubcatSpec SubcatSpec::t0() {
  SubcatSpec s;
  s.name_ = "t0";
  s.kind_ = Kind::Builtin;
  s.builtin_ = Builtin::T0;
  return s;
}

SubcatSpec SubcatSpec::t1() {
  SubcatSpec s;
  s.name_ = "t1";
  s.kind_ = Kind::Builtin;
  s.builtin_ = Builtin::T1;
  return s;
}

SubcatSpec SubcatSpec::discrete() {
  SubcatSpec s;
  s.name_ = "discrete";
  s.kind_ = Kind::Builtin;
  s.builtin_ = Builtin::Discrete;
  return s;
}

SubcatSpec SubcatSpec::indiscrete() {
  SubcatSpec s;
  s.name_ = "indiscrete";
  s.kind_ = Kind::Builtin;
  s.builtin_ = Builtin::Indiscrete;
  return s;
}

SubcatSpec SubcatSpec::by_builtin_name(const std::string& name) {
  if (name == "all") return all();
  if (name == "t0") return t0();
  if (name == "t1") return t1();
  if (name == "discrete") return discrete();
  if (name == "indiscrete") return indiscrete();
  throw InputError("unknown builtin subcategory: " + name);
}

SubcatSpec SubcatSpec::seh(std::string name, std::vector<FinSpace> generators, int bound) {
  if (generators.empty()) throw InputError("seh subcategory needs at least one generator");
  SubcatSpec s;
  s.name_ = std::move(name);
  s.kind_ = Kind::SehGenerators;
  s.gens_ = std::move(generators);
  s.bound_ = bound;
  return s;
}

SubcatSpec SubcatSpec::predicate_table(std::string name, std::set<std::string> member_forms,
                                       int bound) {
  SubcatSpec s;
  s.name_ = std::move(name);
  s.kind_ = Kind::PredicateTable;
  s.member_forms_ = std::move(member_forms);
  s.has_member_forms_ = true;
  s.bound_ = bound;
  return s;
}

SubcatSpec SubcatSpec::reflector_table(std::string name, std::vector<ReflectorEntry> entries,
                                       bool weak, int bound,
                                       std::optional<std::set<std::string>> member_forms) {
  SubcatSpec s;
  s.name_ = std::move(name);
  s.kind_ = Kind::ReflectorTable;
  s.entries_ = std::move(entries);
  s.weak_ = weak;
  s.bound_ = bound;
  if (member_forms) {
    s.member_forms_ = std::move(*member_forms);
    s.has_member_forms_ = true;
  }
  for (const auto& e : s.entries_) {
    if (static_cast<int>(e.map.size()) != e.space.size())
      throw InputError("reflector table: map length mismatch for space of " +
                       std::to_string(e.space.size()) + " points");
    if (!graph_continuous(e.space.preorder(), e.target.preorder(), e.map))
      throw InputError("reflector table: reflection map is not continuous");
    if (!s.member(e.target))
      throw InputError("reflector table: reflection target is not a member");
  }
  // verify weak universality of each entry against the listed members
  Workspace ws;
  s.verified_ = true;
  for (const auto& e : s.entries_) {
    Reflection cand{e.space, ContMap{e.space, e.target, e.map}, e.target, weak};
    ReflectionCert cert = verify_weak_reflection(e.space, cand, s, ws, s.bound_);
    if (!cert.verified)
      throw InputError("reflector table: entry for a " + std::to_string(e.space.size()) +
                       "-point space is not a weak reflection within bound " +
                       std::to_string(s.bound_));
  }
  return s;
}

const ReflectorEntry* SubcatSpec::find_entry(const FinSpace& x) const {
  std::string form = canonical_form(x);
  for (const auto& e : entries_)
    if (canonical_form(e.space) == form) return &e;
  return nullptr;
}

bool SubcatSpec::member(const FinSpace& x) const {
  switch (kind_) {
    case Kind::Builtin:
      switch (builtin_) {
        case Builtin::All: return true;
        case Builtin::T0: return x.is_t0();
        case Builtin::T1: return x.is_t1();
        case Builtin::Discrete: return x.is_discrete();
        case Builtin::Indiscrete: return x.is_indiscrete();
      }
      return false;
    case Kind::SehGenerators: {
      SehSeparation sep = seh_separation(x.preorder(), gens_);
      return sep.kernel.trivial() && sep.sep_order.up == x.preorder().up;
    }
    case Kind::PredicateTable:
      if (x.size() > bound_)
        throw InputError("membership in '" + name_ + "' is only decidable up to " +
                         std::to_string(bound_) + " points");
      return member_forms_.count(canonical_form(x)) > 0;
    case Kind::ReflectorTable: {
      if (has_member_forms_) return member_forms_.count(canonical_form(x)) > 0;
      // without an explicit member list, membership means the tabulated
      // reflection is a homeomorphism; uncovered spaces count as outside
      const ReflectorEntry* e = find_entry(x);
      if (!e) return false;
      ContMap r{e->space, e->target, e->map};
      return r.surjective() && r.embedding();
    }
  }
  return false;
}

bool SubcatSpec::has_reflector() const {
  return kind_ == Kind::Builtin || kind_ == Kind::SehGenerators || kind_ == Kind::ReflectorTable;
}

bool SubcatSpec::reflector_trusted() const {
  if (kind_ == Kind::Builtin || kind_ == Kind::SehGenerators) return true;
  return verified_;
}

bool SubcatSpec::subspace_closed() const {
  // every builtin class and every generator hull is closed under subspaces;
  // nothing is promised for table-described subcategories
  return kind_ == Kind::Builtin || kind_ == Kind::SehGenerators;
}

bool SubcatSpec::product_closed() const {
  return kind_ == Kind::Builtin || kind_ == Kind::SehGenerators;
}

Reflection SubcatSpec::reflect(const FinSpace& x) const {
  switch (kind_) {
    case Kind::Builtin:
      switch (builtin_) {
        case Builtin::All:
          return Reflection{x, ContMap::identity(x), x, false};
        case Builtin::Indiscrete: {
          FinSpace target = x;
          if (!x.is_indiscrete()) {
            std::vector<Mask> opens{0};
            if (x.size() > 0) opens.push_back(x.full_mask());
            target = FinSpace::validated(x.labels(), std::move(opens));
          }
          Graph g = ContMap::identity(x).map;
          return Reflection{x, ContMap{x, target, std::move(g)}, target, false};
        }
        case Builtin::T0: {
          Reflected r = t0_reflection(x);
          return Reflection{x, r.morphism, r.target, false};
        }
        case Builtin::T1:
        case Builtin::Discrete: {
          int count = 0;
          std::vector<int> cls = x.preorder().component_partition(&count);
          Partition part{cls, count};
          Preorder q;
          q.n = count;
          for (int c = 0; c < count; ++c) q.up.push_back(bit(c));
          FinSpace target = FinSpace::from_preorder(q, class_labels(x.labels(), part));
          Graph g(static_cast<std::size_t>(x.size()));
          for (int i = 0; i < x.size(); ++i)
            g[static_cast<std::size_t>(i)] =
                static_cast<std::uint8_t>(part.cls[static_cast<std::size_t>(i)]);
          return Reflection{x, ContMap{x, target, std::move(g)}, target, false};
        }
      }
      throw InputError("unreachable builtin");
    case Kind::SehGenerators:
      return seh_reflection(x, gens_);
    case Kind::PredicateTable:
      throw InputError("subcategory '" + name_ + "' has no reflector");
    case Kind::ReflectorTable: {
      const ReflectorEntry* e = find_entry(x);
      if (!e) throw InputError("reflector of '" + name_ + "' is not covered for this space");
      auto iso = find_homeomorphism(x, e->space);
      Graph g(static_cast<std::size_t>(x.size()));
      for (int i = 0; i < x.size(); ++i)
        g[static_cast<std::size_t>(i)] = e->map[(*iso)[static_cast<std::size_t>(i)]];
      return Reflection{x, ContMap::checked(x, e->target, std::move(g)), e->target, weak_};
    }
  }
  throw InputError("unreachable kind");
}

Partition SubcatSpec::reflection_kernel(const Preorder& p) const {
  switch (kind_) {
    case Kind::Builtin:
      switch (builtin_) {
        case Builtin::All:
        case Builtin::Indiscrete:
          return identity_partition(p.n);
        case Builtin::T0: {
          Partition out;
          out.cls = p.equivalence_partition(&out.count);
          return out;
        }
        case Builtin::T1:
        case Builtin::Discrete: {
          Partition out;
          out.cls = p.component_partition(&out.count);
          return out;
        }
      }
      throw InputError("unreachable builtin");
    case Kind::SehGenerators:
      return seh_separation(p, gens_).kernel;
    case Kind::PredicateTable:
      throw InputError("subcategory '" + name_ + "' has no reflector");
    case Kind::ReflectorTable: {
      std::vector<std::string> labels;
      for (int i = 0; i < p.n; ++i) labels.push_back("q" + std::to_string(i));
      FinSpace space = FinSpace::from_preorder(p, std::move(labels));
      Reflection r = reflect(space);
      Partition out;
      out.cls.assign(static_cast<std::size_t>(p.n), -1);
      std::vector<int> renumber(static_cast<std::size_t>(r.target.size()), -1);
      int next = 0;
      for (int i = 0; i < p.n; ++i) {
        int t = r.morphism.map[static_cast<std::size_t>(i)];
        if (renumber[static_cast<std::size_t>(t)] < 0) renumber[static_cast<std::size_t>(t)] = next++;
        out.cls[static_cast<std::size_t>(i)] = renumber[static_cast<std::size_t>(t)];
      }
      out.count = next;
      return out;
    }
  }
  throw InputError("unreachable kind");
}

ReflectionCert verify_weak_reflection(const FinSpace& x, const Reflection& cand,
                                      const SubcatSpec& a, Workspace& ws, int bound) {
  if (!a.member(cand.target))
    throw InputError("verify_weak_reflection: candidate target is not a member");
  if (bound < 0) bound = a.bound();

  ReflectionCert cert;
  cert.bound = bound;
  cert.unique = true;
  for (int n = 0; n <= bound; ++n) {
    for (const auto& m : ws.spaces_of_size(n)) {
      if (!a.member(m)) continue;
      const auto& from_target = ws.homs(cand.target, m);
      // group the composites g . r by their value vector
      std::unordered_map<std::string, int> factored;
      for (const auto& g : from_target) {
        std::string key;
        key.reserve(static_cast<std::size_t>(x.size()));
        for (int i = 0; i < x.size(); ++i)
          key += static_cast<char>(g[static_cast<std::size_t>(cand.morphism.map[static_cast<std::size_t>(i)])]);
        factored[key]++;
      }
      for (const auto& f : ws.homs(x, m)) {
        std::string key(f.begin(), f.end());
        auto it = factored.find(key);
        if (it == factored.end()) {
          cert.verified = false;
          cert.failure = std::make_pair(m, f);
          return cert;
        }
        if (it->second > 1) cert.unique = false;
      }
    }
  }
  cert.verified = true;
  return cert;
}

std::vector<FinSpace> members_up_to(const SubcatSpec& a, Workspace& ws, int max_size) {
  std::vector<FinSpace> out;
  for (int n = 0; n <= max_size; ++n)
    for (const auto& s : ws.spaces_of_size(n))
      if (a.member(s)) out.push_back(s);
  return out;
}

}  // namespace regclose
