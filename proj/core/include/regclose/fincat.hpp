#pragma once

// A small materialized-category kernel: hom-sets as explicit tables and
// universal properties checked by exhaustion.  Deliberately slow and
// trustworthy; it certifies the direct constructions of the space layer
// against the abstract definitions.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "regclose/finspace.hpp"

namespace regclose {

class FinCategory {
 public:
  struct Morphism {
    int dom = -1;
    int cod = -1;
    Graph graph;    // meaningful only in concrete (space-backed) categories
    bool concrete = false;
  };

  /// Incremental construction of an abstract category from explicit tables.
  class Builder {
   public:
    int add_object(std::string name);
    /// Returns the new morphism id.  Identities are added automatically per
    /// object; use identity_of() to retrieve them.
    int add_morphism(int dom, int cod);
    void set_composite(int g, int f, int gf);  // g after f
    int identity_of(int object) const;
    /// Checks identity laws, closure and associativity before returning.
    FinCategory build() const;

   private:
    friend class FinCategory;
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<int> identities_;
    std::unordered_map<std::uint64_t, int> table_;
  };

  int object_count() const { return static_cast<int>(object_names_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }
  const std::vector<std::string>& object_names() const { return object_names_; }
  const Morphism& morphism(int id) const { return morphisms_[static_cast<std::size_t>(id)]; }
  int identity(int object) const { return identities_[static_cast<std::size_t>(object)]; }
  const std::vector<int>& hom(int dom, int cod) const;

  /// g after f; throws InputError when not composable.
  int compose(int g, int f) const;
  bool composable(int g, int f) const;

  /// id of a concrete morphism by its graph, or -1.
  int find_concrete(int dom, int cod, const Graph& g) const;

 private:
  friend class Builder;
  friend FinCategory make_concrete_category(std::vector<std::string> object_names,
                                            std::vector<Morphism> morphisms,
                                            std::vector<int> identities);
  std::vector<std::string> object_names_;
  std::vector<Morphism> morphisms_;
  std::vector<int> identities_;
  std::vector<std::vector<std::vector<int>>> blocks_;  // [dom][cod] -> ids
  std::unordered_map<std::uint64_t, int> table_;       // abstract composition
  std::unordered_map<std::string, int> graph_index_;   // concrete lookup
  bool concrete_ = false;

  void index();
  static std::string graph_key(int dom, int cod, const Graph& g);
};

/// Used by the export bridge; morphism graphs must compose within the list.
FinCategory make_concrete_category(std::vector<std::string> object_names,
                                   std::vector<FinCategory::Morphism> morphisms,
                                   std::vector<int> identities);

struct MorphismClass {
  bool mono = false;
  bool epi = false;
  bool iso = false;
};
MorphismClass morphism_class(const FinCategory& c, int f);

enum class CertKind { Equalizer, CokernelPair, Product, Pullback };
enum class CertFailure { NotCommuting, MediatorMissing, MediatorNotUnique };

struct CertCounterexample {
  CertFailure failure;
  int test_object = -1;
  std::vector<int> morphisms;  // the competitor(s) witnessing the failure
};

struct UniversalCertificate {
  CertKind kind;
  bool verified = false;
  std::optional<CertCounterexample> counterexample;
};

/// e equalizes (f, g) and is universal among all h with f.h = g.h.
UniversalCertificate verify_equalizer(const FinCategory& c, int e, int f, int g);
/// (i, j) coequalize after m and are initial among all such pairs.
UniversalCertificate verify_cokernel_pair(const FinCategory& c, int m, int i, int j);
/// p : P -> X, q : P -> Y form a product cone.
UniversalCertificate verify_product(const FinCategory& c, int p, int q);
/// p, q form the pullback cone of (f, g); requires f.p = g.q.
UniversalCertificate verify_pullback(const FinCategory& c, int p, int q, int f, int g);

/// First morphism (in id order) verified as the equalizer of (f, g).
std::optional<int> search_equalizer(const FinCategory& c, int f, int g);

struct CategoryViolation {
  std::string law;  // "identity", "closure", "associativity"
  std::vector<int> morphisms;
};
/// Exhaustive law check; throws InputError when the triple count exceeds
/// the budget.
std::optional<CategoryViolation> validate_category(const FinCategory& c,
                                                   std::size_t triple_budget = 50'000'000);

}  // namespace regclose
