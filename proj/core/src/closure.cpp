#include "regclose/closure.hpp"

#include <algorithm>

namespace regclose {
namespace {

// Witness payloads are only kept when the apex stays this small.
constexpr int kWitnessApexLimit = 12;

Mask kernel_equalizer_carrier(const SelfPushout& po, const Partition& kernel, int ambient_n) {
  Mask out = 0;
  for (int p = 0; p < ambient_n; ++p) {
    int l = kernel.cls[static_cast<std::size_t>(po.left[static_cast<std::size_t>(p)])];
    int r = kernel.cls[static_cast<std::size_t>(po.right[static_cast<std::size_t>(p)])];
    if (l == r) out |= bit(p);
  }
  return out;
}

}  // namespace

Mask closure_formula_carrier(const Preorder& ambient, Mask carrier, const SubcatSpec& a) {
  SelfPushout po = self_pushout(ambient, carrier);
  Partition kernel = a.reflection_kernel(po.apex);
  return kernel_equalizer_carrier(po, kernel, ambient.n);
}

ClosureResult closure_formula(const Subobject& m, const SubcatSpec& a) {
  if (!a.has_reflector())
    throw InputError("closure_formula: subcategory '" + a.name() + "' has no reflector");
  ClosureResult out;
  out.input = m;
  out.method = ClosureMethod::Formula;
  out.closure = closure_formula_carrier(m.ambient.preorder(), m.carrier, a);
  out.exact = a.reflector_trusted();
  out.bound = 0;
  if (m.ambient.size() * 2 - popcount(m.carrier) <= kWitnessApexLimit) {
    CokernelPair cp = cokernel_pair(m);
    out.reflection = a.reflect(cp.apex);
    out.coker = std::move(cp);
  }
  return out;
}

std::vector<char> regular_carriers(const FinSpace& x, const SubcatSpec& a, Workspace& ws,
                                   int* bound_used, bool* exact) {
  int bound = a.bound();
  bool ex = false;
  if (a.subspace_closed()) {
    // an equalizer pair corestricts to the union of its two images
    bound = 2 * x.size();
    ex = bound <= kHardMaxPoints;
    bound = std::min(bound, kHardMaxPoints);
  }
  if (bound_used) *bound_used = bound;
  if (exact) *exact = ex;

  const std::size_t total = std::size_t{1} << x.size();
  std::vector<char> regular(total, 0);
  std::size_t found = 0;
  for (int n = 0; n <= bound && found < total; ++n) {
    for (const auto& mem : ws.spaces_of_size(n)) {
      if (!a.member(mem)) continue;
      const auto& homs = ws.homs(x, mem);
      for (std::size_t hi = 0; hi < homs.size() && found < total; ++hi) {
        for (std::size_t ki = hi; ki < homs.size(); ++ki) {
          Mask agree = 0;
          for (int p = 0; p < x.size(); ++p)
            if (homs[hi][static_cast<std::size_t>(p)] == homs[ki][static_cast<std::size_t>(p)])
              agree |= bit(p);
          if (!regular[agree]) {
            regular[agree] = 1;
            if (++found == total) break;
          }
        }
      }
    }
  }
  return regular;
}

ClosureResult closure_bruteforce(const Subobject& m, const SubcatSpec& a, Workspace& ws) {
  ClosureResult out;
  out.input = m;
  out.method = ClosureMethod::BruteForce;
  std::vector<char> regular = regular_carriers(m.ambient, a, ws, &out.bound, &out.exact);

  // meet over an empty witness family is the full carrier
  Mask acc = m.ambient.full_mask();
  for (std::size_t r = 0; r < regular.size(); ++r) {
    if (!regular[r]) continue;
    if ((static_cast<Mask>(r) & m.carrier) != m.carrier) continue;
    acc &= static_cast<Mask>(r);
    out.witnesses.push_back(static_cast<Mask>(r));
  }
  out.closure = acc;
  return out;
}

RegularityResult is_A_regular(const Subobject& m, const SubcatSpec& a, Workspace& ws) {
  RegularityResult out;
  int bound = a.bound();
  if (a.subspace_closed()) {
    bound = 2 * m.ambient.size();
    out.exact = bound <= kHardMaxPoints;
    bound = std::min(bound, kHardMaxPoints);
  }
  out.bound = bound;

  const FinSpace& x = m.ambient;
  for (int n = 0; n <= bound; ++n) {
    for (const auto& mem : ws.spaces_of_size(n)) {
      if (!a.member(mem)) continue;
      const auto& homs = ws.homs(x, mem);
      for (std::size_t hi = 0; hi < homs.size(); ++hi) {
        for (std::size_t ki = hi; ki < homs.size(); ++ki) {
          Mask agree = 0;
          for (int p = 0; p < x.size(); ++p)
            if (homs[hi][static_cast<std::size_t>(p)] == homs[ki][static_cast<std::size_t>(p)])
              agree |= bit(p);
          if (agree == m.carrier) {
            out.regular = true;
            out.witness = RegularityWitness{ContMap{x, mem, homs[hi]}, ContMap{x, mem, homs[ki]}};
            return out;
          }
        }
      }
    }
  }
  // a reflector settles the verdict exactly: the formula value is itself
  // regular, so m is regular iff it is formula-closed
  if (!out.regular && a.has_reflector() && a.reflector_trusted()) {
    out.exact = true;
    out.regular = closure_formula_carrier(x.preorder(), m.carrier, a) == m.carrier;
  }
  return out;
}

bool diagonal_is_regular(const FinSpace& x, const SubcatSpec& a) {
  Preorder prod = Preorder::product(x.preorder(), x.preorder());
  Mask diag = 0;
  for (int i = 0; i < x.size(); ++i) diag |= bit(i * x.size() + i);
  return closure_formula_carrier(prod, diag, a) == diag;
}

bool ClosureOperatorTable::all_exact() const {
  for (const auto& e : entries)
    if (!e.exact) return false;
  return true;
}

Mask ClosureOperatorTable::closure_of(int space, Mask subset) const {
  for (const auto& e : entries)
    if (e.space == space && e.subset == subset) return e.closure;
  throw InputError("closure table has no entry for this subset");
}

ClosureOperatorTable closure_operator_table(const SubcatSpec& a,
                                            const std::vector<FinSpace>& universe, Workspace& ws,
                                            std::optional<ClosureMethod> force_method) {
  ClosureOperatorTable t;
  t.subcat = a.name();
  t.universe = universe;
  const bool formula =
      force_method ? *force_method == ClosureMethod::Formula : a.has_reflector();
  if (formula && !a.has_reflector())
    throw InputError("closure_operator_table: formula method needs a reflector");
  for (int s = 0; s < static_cast<int>(universe.size()); ++s) {
    const FinSpace& x = universe[static_cast<std::size_t>(s)];
    if (formula) {
      for (Mask sub = 0;; ++sub) {
        TableEntry e;
        e.space = s;
        e.subset = sub;
        e.method = ClosureMethod::Formula;
        e.closure = closure_formula_carrier(x.preorder(), sub, a);
        e.exact = a.reflector_trusted();
        t.entries.push_back(e);
        if (sub == x.full_mask()) break;
      }
    } else {
      int bound = 0;
      bool exact = false;
      std::vector<char> regular = regular_carriers(x, a, ws, &bound, &exact);
      for (Mask sub = 0;; ++sub) {
        TableEntry e;
        e.space = s;
        e.subset = sub;
        e.method = ClosureMethod::BruteForce;
        Mask acc = x.full_mask();
        for (std::size_t r = 0; r < regular.size(); ++r)
          if (regular[r] && (static_cast<Mask>(r) & sub) == sub) acc &= static_cast<Mask>(r);
        e.closure = acc;
        e.exact = exact;
        t.entries.push_back(e);
        if (sub == x.full_mask()) break;
      }
    }
  }
  return t;
}

AxiomReport check_axioms(const ClosureOperatorTable& t, Workspace& ws) {
  AxiomReport rep;
  const auto& uni = t.universe;

  // per-space lookup arrays
  std::vector<std::vector<Mask>> cl(uni.size());
  for (const auto& e : t.entries) {
    auto& v = cl[static_cast<std::size_t>(e.space)];
    if (v.empty()) v.assign(std::size_t{1} << uni[static_cast<std::size_t>(e.space)].size(), 0);
    v[e.subset] = e.closure;
  }

  for (int s = 0; s < static_cast<int>(uni.size()); ++s) {
    const FinSpace& x = uni[static_cast<std::size_t>(s)];
    const auto& v = cl[static_cast<std::size_t>(s)];
    const Mask full = x.full_mask();
    for (Mask m = 0;; ++m) {
      if ((v[m] & m) != m && rep.extension) {
        rep.extension = false;
        rep.counterexamples.push_back({"extension", s, m, "closure drops part of the subset"});
      }
      if ((v[v[m]] != v[m]) && rep.idempotency) {
        rep.idempotency = false;
        rep.counterexamples.push_back({"idempotency", s, m, "closing twice grows the subset"});
      }
      for (Mask m2 = m;; ++m2) {
        if ((m2 & m) == m && (v[m] & ~v[m2]) && rep.monotonicity) {
          rep.monotonicity = false;
          rep.counterexamples.push_back({"monotonicity", s, m, "larger subset, smaller closure"});
        }
        if (m2 == full) break;
      }
      if (m == full) break;
    }
  }

  for (int s = 0; s < static_cast<int>(uni.size()) && rep.continuity; ++s) {
    for (int d = 0; d < static_cast<int>(uni.size()) && rep.continuity; ++d) {
      const FinSpace& x = uni[static_cast<std::size_t>(s)];
      const FinSpace& y = uni[static_cast<std::size_t>(d)];
      for (const auto& g : ws.homs(x, y)) {
        ContMap f{x, y, g};
        for (Mask m = 0;; ++m) {
          Mask lhs = f.image_of(cl[static_cast<std::size_t>(s)][m]);
          Mask rhs = cl[static_cast<std::size_t>(d)][f.image_of(m)];
          if (lhs & ~rhs) {
            rep.continuity = false;
            rep.counterexamples.push_back(
                {"continuity", s, m, "image of the closure escapes the closure of the image"});
            break;
          }
          if (m == x.full_mask()) break;
        }
        if (!rep.continuity) break;
      }
    }
  }
  return rep;
}

CompareResult same_closure(const SubcatSpec& a, const SubcatSpec& b,
                           const std::vector<FinSpace>& universe, Workspace& ws) {
  ClosureOperatorTable ta = closure_operator_table(a, universe, ws);
  ClosureOperatorTable tb = closure_operator_table(b, universe, ws);
  CompareResult out;
  out.exact = ta.all_exact() && tb.all_exact();
  int mp = 0;
  for (const auto& s : universe) mp = std::max(mp, s.size());
  out.max_points = mp;
  for (std::size_t i = 0; i < ta.entries.size(); ++i) {
    const TableEntry& ea = ta.entries[i];
    const TableEntry& eb = tb.entries[i];
    if (ea.closure != eb.closure) {
      out.same = false;
      out.counterexample = CompareCounterexample{ea.space, ea.subset, ea.closure, eb.closure};
      return out;
    }
  }
  out.same = true;
  return out;
}

EpiDenseReport epi_dense_consistency(const SubcatSpec& a, const std::vector<FinSpace>& universe,
                                     Workspace& ws) {
  const bool allowed = (a.kind() == SubcatSpec::Kind::Builtin &&
                        (a.builtin() == SubcatSpec::Builtin::T0 ||
                         a.builtin() == SubcatSpec::Builtin::Indiscrete ||
                         a.builtin() == SubcatSpec::Builtin::All)) ||
                       a.kind() == SubcatSpec::Kind::SehGenerators;
  if (!allowed)
    throw InputError("epi_dense_consistency expects a strongly epireflective builtin "
                     "(t0, indiscrete, all, seh:*)");

  EpiDenseReport rep;
  for (int s = 0; s < static_cast<int>(universe.size()); ++s) {
    const FinSpace& x = universe[static_cast<std::size_t>(s)];
    if (!a.member(x)) continue;
    for (int d = 0; d < static_cast<int>(universe.size()); ++d) {
      const FinSpace& y = universe[static_cast<std::size_t>(d)];
      if (!a.member(y)) continue;
      for (const auto& g : ws.homs(x, y)) {
        ContMap f{x, y, g};
        bool cancellable = is_cancellable(f, a, ws).cancellable;
        bool dense = closure_formula_carrier(y.preorder(), f.image_mask(), a) == y.full_mask();
        ++rep.checked;
        if (cancellable != dense)
          rep.violations.push_back(EpiDenseViolation{s, d, g, cancellable, dense});
      }
    }
  }
  return rep;
}

Thm41Report thm41_sweep(const SubcatSpec& a, const SubcatSpec& b,
                        const std::vector<FinSpace>& universe, Workspace& ws) {
  if (!a.has_reflector()) throw InputError("thm41_sweep needs a reflector for " + a.name());
  Thm41Report rep;

  std::vector<int> members;
  for (int s = 0; s < static_cast<int>(universe.size()); ++s)
    if (b.member(universe[static_cast<std::size_t>(s)])) members.push_back(s);

  CompareResult cmp = same_closure(a, b, universe, ws);
  rep.c = cmp.same;
  rep.table_counterexample = cmp.counterexample;

  // per-ambient agreement for the report rows
  ClosureOperatorTable ta = closure_operator_table(a, universe, ws);
  ClosureOperatorTable tb = closure_operator_table(b, universe, ws);
  std::vector<bool> ambient_agrees(universe.size(), true);
  for (std::size_t i = 0; i < ta.entries.size(); ++i)
    if (ta.entries[i].closure != tb.entries[i].closure)
      ambient_agrees[static_cast<std::size_t>(ta.entries[i].space)] = false;

  rep.precondition = true;
  rep.a = true;
  rep.b = true;
  for (int s : members) {
    const FinSpace& x = universe[static_cast<std::size_t>(s)];
    Thm41Row row;
    row.space = s;
    row.alpha_mono = true;
    for (const auto& u : universe)
      if (!alpha_mono(u, x, a)) {
        row.alpha_mono = false;
        break;
      }
    row.diag_regular = diagonal_is_regular(x, a);
    row.in_s_hull = in_S_hull(x, a, ws).member;
    row.tables_agree = ambient_agrees[static_cast<std::size_t>(s)];
    rep.precondition = rep.precondition && row.alpha_mono;
    rep.a = rep.a && row.diag_regular;
    rep.b = rep.b && row.in_s_hull;
    rep.rows.push_back(row);
  }
  rep.defect = rep.precondition && !((rep.a == rep.b) && (rep.b == rep.c));
  return rep;
}

}  // namespace regclose
