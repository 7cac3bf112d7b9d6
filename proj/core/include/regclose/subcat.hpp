#pragma once

// Finitely-described subcategories of finite Top: membership predicates,
// (weak) reflections, and the separation machinery behind strongly
// epireflective hulls of generator lists.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "regclose/canonical.hpp"
#include "regclose/finspace.hpp"

namespace regclose {

struct Partition {
  std::vector<int> cls;
  int count = 0;
  bool trivial() const { return count == static_cast<int>(cls.size()); }
};

/// A (weak) reflection of `source` into a subcategory.
struct Reflection {
  FinSpace source;
  ContMap morphism;
  FinSpace target;
  bool weak = false;
};

struct ReflectorEntry {
  FinSpace space;
  FinSpace target;
  Graph map;
};

/// Separation data of a space against a generator list: the kernel of the
/// canonical map into the product of all generator-valued maps, and the
/// pointwise initial preorder it induces.
struct SehSeparation {
  Partition kernel;
  Preorder sep_order;  // on the points of the analysed space
};
SehSeparation seh_separation(const Preorder& p, const std::vector<FinSpace>& gens);

class SubcatSpec {
 public:
  enum class Kind { Builtin, SehGenerators, PredicateTable, ReflectorTable };
  enum class Builtin { All, T0, T1, Discrete, Indiscrete };

  static SubcatSpec all();
  static SubcatSpec t0();
  static SubcatSpec t1();
  static SubcatSpec discrete();
  static SubcatSpec indiscrete();
  /// One of "all", "t0", "t1", "discrete", "indiscrete".
  static SubcatSpec by_builtin_name(const std::string& name);
  static SubcatSpec seh(std::string name, std::vector<FinSpace> generators,
                        int bound = kDefaultMaxPoints);
  static SubcatSpec predicate_table(std::string name, std::set<std::string> member_forms,
                                    int bound);
  /// Entries are verified as weak reflections against the table's own
  /// members at load time (within `bound`); verification failures throw.
  static SubcatSpec reflector_table(std::string name, std::vector<ReflectorEntry> entries,
                                    bool weak, int bound,
                                    std::optional<std::set<std::string>> member_forms);

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  Builtin builtin() const { return builtin_; }
  int bound() const { return bound_; }
  const std::vector<FinSpace>& generators() const { return gens_; }

  bool member(const FinSpace& x) const;
  bool has_reflector() const;
  bool weak_reflector() const { return weak_; }
  bool reflector_trusted() const;  // exactness of the closure formula
  bool subspace_closed() const;
  bool product_closed() const;

  Reflection reflect(const FinSpace& x) const;
  /// Fibers of the reflection morphism, computed at preorder level; the
  /// closure-formula path needs nothing else.
  Partition reflection_kernel(const Preorder& p) const;

 private:
  SubcatSpec() = default;
  std::string name_;
  Kind kind_ = Kind::Builtin;
  Builtin builtin_ = Builtin::All;
  std::vector<FinSpace> gens_;
  std::set<std::string> member_forms_;
  bool has_member_forms_ = false;
  std::vector<ReflectorEntry> entries_;
  bool weak_ = false;
  bool verified_ = false;
  int bound_ = kDefaultMaxPoints;

  const ReflectorEntry* find_entry(const FinSpace& x) const;
};

/// The canonical map of X into the strongly epireflective hull of the
/// generators; strong universal property by construction.
Reflection seh_reflection(const FinSpace& x, const std::vector<FinSpace>& gens);

struct ReflectionCert {
  bool verified = false;
  bool unique = false;  // every factorization unique within the bound
  int bound = 0;
  std::optional<std::pair<FinSpace, Graph>> failure;  // member and unfactorable map
};

/// Checks that every map from cand.source into a member of size <= bound
/// factors through cand.morphism.
ReflectionCert verify_weak_reflection(const FinSpace& x, const Reflection& cand,
                                      const SubcatSpec& a, Workspace& ws, int bound = -1);

/// Members of `a` among spaces with at most max_size points.
std::vector<FinSpace> members_up_to(const SubcatSpec& a, Workspace& ws, int max_size);

}  // namespace regclose
