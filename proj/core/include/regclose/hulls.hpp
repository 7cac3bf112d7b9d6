#pragma once

// Hull operators on subcategories: the strongly epireflective hull via
// embeddings, the mono-hull via injections, the cancellable-morphism
// closures E and D, diagonal subobjects, canonical product-comparison maps
// and the intermediate-category membership tests.

#include <optional>
#include <string>
#include <vector>

#include "regclose/canonical.hpp"
#include "regclose/finspace.hpp"
#include "regclose/subcat.hpp"

namespace regclose {

enum class HullKind { S, E, D, Mono, SmallestIntermediate, LargestIntermediate };

struct HullReport {
  HullKind hull;
  bool member = false;
  int bound = 0;
  bool exact = false;      // verdict independent of the bound
  bool degenerate = false; // the quantified condition was vacuous
  std::optional<ContMap> witness_map;  // embedding / injection when member
  std::string note;
};

HullReport in_S_hull(const FinSpace& x, const SubcatSpec& a, Workspace& ws, int bound = -1);
HullReport in_mono_hull(const FinSpace& x, const SubcatSpec& a, Workspace& ws, int bound = -1);
HullReport in_smallest_intermediate(const FinSpace& x, const SubcatSpec& a, Workspace& ws,
                                    int bound = -1);
HullReport in_largest_intermediate(const FinSpace& x, const SubcatSpec& a, Workspace& ws,
                                   int bound = -1);

struct CancellabilityResult {
  bool cancellable = false;
  int bound = 0;
  bool exact = false;
  std::optional<std::pair<ContMap, ContMap>> witness;  // distinct pair agreeing after f
};
CancellabilityResult is_cancellable(const ContMap& f, const SubcatSpec& a, Workspace& ws,
                                    int bound = -1);
/// Alias: relative epimorphisms and cancellable morphisms name one class.
inline CancellabilityResult is_rel_epi(const ContMap& f, const SubcatSpec& a, Workspace& ws,
                                       int bound = -1) {
  return is_cancellable(f, a, ws, bound);
}

/// All A-cancellable morphisms between spaces of at most `bound` points,
/// with cancellability decided exactly (2 |cod| rule) where the subcategory
/// is closed under subspaces.
struct CancellableSet {
  struct Item {
    FinSpace dom;
    FinSpace cod;
    Graph graph;
  };
  std::vector<Item> items;
  int bound = 0;
  bool exact = false;
};
CancellableSet cancellable_morphisms(const SubcatSpec& a, Workspace& ws, int bound);

HullReport in_E_hull(const FinSpace& x, const SubcatSpec& a, Workspace& ws, int bound = -1);
HullReport in_D_hull(const FinSpace& x, const SubcatSpec& a, Workspace& ws, int bound = -1);
/// Shared Hausdorff-object core for E and D over a precomputed morphism set.
HullReport hausdorff_member(const FinSpace& x, const CancellableSet& against, HullKind kind,
                            Workspace& ws);
/// Side condition reported alongside the E-hull: are all epimorphisms
/// (surjections, at this scale) cancellable against the subcategory?
bool epis_are_cancellable(const SubcatSpec& a, Workspace& ws, int bound);

Subobject diagonal(const FinSpace& x);
/// The diagonal as a map X -> X*X onto the diagonal subobject.
ContMap diagonal_map(const FinSpace& x, const Product& pr);

struct AlphaResult {
  ContMap alpha;  // r(U*X) -> r(U) x r(X)
  bool mono = false;
};
AlphaResult canonical_alpha(const FinSpace& u, const FinSpace& x, const SubcatSpec& a);
/// Injectivity of the canonical map, decided at kernel level without
/// materializing any product topology.
bool alpha_mono(const FinSpace& u, const FinSpace& x, const SubcatSpec& a);

struct LordWitness {
  ContMap f;
  ContMap g;
  ContMap gbar;
};
/// Searches for the separation witness (f, g, gbar) hypothesized for
/// non-members; input error when x is a member.
std::optional<LordWitness> lord_condition_star(const FinSpace& x, const SubcatSpec& a,
                                               Workspace& ws, int bound = -1);

}  // namespace regclose
