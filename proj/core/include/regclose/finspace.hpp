#pragma once

// Finite topological spaces and continuous maps, together with the
// equalizer / cokernel-pair / product / factorization constructions the
// rest of the library is built on.
//
// A space is stored as its open-set family (bitmasks over the point list).
// The specialization preorder x <= y  ("every open containing x contains y")
// is derived once at construction; under this convention the opens are
// exactly the up-closed sets and the minimal open neighbourhood of x is
// up[x].  Continuity of a point map between finite spaces is equivalent to
// monotonicity of the preorders, which is what most algorithms test.

#include <cstdint>
#include <bit>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace regclose {

using Mask = std::uint64_t;
using Graph = std::vector<std::uint8_t>;  // point map, index based

inline constexpr int kMaxPoints = 64;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool has_bit(Mask m, int i) { return (m >> i) & 1u; }
inline Mask bit(int i) { return Mask{1} << i; }

/// Raised when an open-set family violates the topology axioms.
class SpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on violated preconditions, unknown inputs and exceeded budgets.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Specialization preorder of a finite space.  up[x] = {y | x <= y} is the
/// minimal open neighbourhood of x; reflexive and transitive by invariant.
struct Preorder {
  int n = 0;
  std::vector<Mask> up;

  bool le(int x, int y) const { return has_bit(up[x], y); }
  bool equivalent(int x, int y) const { return le(x, y) && le(y, x); }
  Mask full() const { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
  bool up_closed(Mask w) const;

  bool antisymmetric() const;           // no two distinct equivalent points
  bool discrete() const;                // up[x] == {x}
  bool indiscrete() const;              // up[x] == full

  void close_transitively();
  static Preorder from_opens(int n, const std::vector<Mask>& opens);
  static Preorder product(const Preorder& a, const Preorder& b);  // index a*b.n+b

  /// Partition by preorder equivalence (the T0 quotient kernel).
  std::vector<int> equivalence_partition(int* class_count) const;
  /// Partition into connected components of the comparability graph.
  std::vector<int> component_partition(int* class_count) const;

  bool operator==(const Preorder&) const = default;
};

/// Pushout of the inclusion of `carrier` along itself, at preorder level.
/// Apex points are ordered: shared carrier points, then the first copy of
/// the complement, then the second copy.
struct SelfPushout {
  Preorder apex;
  std::vector<int> left;    // per ambient point: image under the first injection
  std::vector<int> right;   // ... second injection
  std::vector<int> copy;    // per apex point: 0 shared, 1 first copy, 2 second
  std::vector<int> origin;  // per apex point: originating ambient point
};
SelfPushout self_pushout(const Preorder& ambient, Mask carrier);

/// A finite topological space: labelled points plus the family of opens.
/// Immutable; copies share the underlying data.
class FinSpace {
 public:
  FinSpace();  // the empty space

  /// Validates the topology axioms; throws SpaceError naming the violated
  /// axiom and a witness pair.
  static FinSpace validated(std::vector<std::string> labels, std::vector<Mask> opens);
  /// Alexandrov space of a preorder (opens = all up-sets).
  static FinSpace from_preorder(const Preorder& pre, std::vector<std::string> labels);

  static FinSpace empty_space();
  static FinSpace point();
  static FinSpace sierpinski();         // two points, three opens
  static FinSpace discrete(int n);
  static FinSpace indiscrete(int n);

  int size() const { return static_cast<int>(d_->labels.size()); }
  Mask full_mask() const { return d_->pre.full(); }
  const std::vector<std::string>& labels() const { return d_->labels; }
  const std::vector<Mask>& opens() const { return d_->opens; }
  const Preorder& preorder() const { return d_->pre; }

  bool is_open(Mask w) const { return d_->pre.up_closed(w); }
  int label_index(std::string_view label) const;  // -1 when absent

  bool is_t0() const { return d_->pre.antisymmetric(); }
  bool is_t1() const { return d_->pre.discrete(); }  // finite T1 = discrete
  bool is_discrete() const { return d_->pre.discrete(); }
  bool is_indiscrete() const { return d_->pre.indiscrete(); }

  FinSpace subspace(Mask carrier) const;

  bool operator==(const FinSpace& o) const;

 private:
  struct Data {
    std::vector<std::string> labels;
    std::vector<Mask> opens;  // sorted ascending as integers
    Preorder pre;
  };
  explicit FinSpace(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static FinSpace unchecked(std::vector<std::string> labels, std::vector<Mask> opens);
  std::shared_ptr<const Data> d_;
};

bool graph_continuous(const Preorder& dom, const Preorder& cod, const Graph& g);

/// A continuous map between finite spaces.
struct ContMap {
  FinSpace dom;
  FinSpace cod;
  Graph map;

  static ContMap checked(FinSpace dom, FinSpace cod, Graph g);
  static ContMap identity(const FinSpace& x);

  int operator()(int i) const { return map[static_cast<std::size_t>(i)]; }
  bool injective() const;
  bool surjective() const;
  bool embedding() const;  // injective and preorder-reflecting
  Mask image_mask() const;
  Mask image_of(Mask sub) const;
  Mask preimage_of(Mask sub) const;

  bool operator==(const ContMap& o) const;
};

/// g after f.
ContMap compose(const ContMap& g, const ContMap& f);

/// A canonical subobject: a point subset of an ambient space, carrying the
/// subspace topology.  Subobjects of a fixed ambient are equal iff their
/// carriers are.
struct Subobject {
  FinSpace ambient;
  Mask carrier = 0;

  FinSpace subspace() const { return ambient.subspace(carrier); }
  ContMap inclusion() const;
  bool is_full() const { return carrier == ambient.full_mask(); }
  bool is_empty() const { return carrier == 0; }

  bool operator==(const Subobject& o) const {
    return carrier == o.carrier && ambient == o.ambient;
  }
};

struct CokernelPair {
  Subobject source;
  FinSpace apex;
  ContMap left;
  ContMap right;
};

struct Product {
  FinSpace space;
  ContMap p;  // projection to the first factor
  ContMap q;  // projection to the second factor
};

struct EpiMonoFactorization {
  ContMap epi;     // surjection onto the image subspace
  Subobject mono;  // the image, embedded
};

struct Reflected {
  ContMap morphism;
  FinSpace target;
};

struct PullbackResult {
  Subobject sub;  // of product(dom f, dom g)
  ContMap p;      // to dom f
  ContMap q;      // to dom g
};

/// All continuous maps X -> Y in lexicographic order on the value vector.
std::vector<Graph> hom_graphs(const FinSpace& x, const FinSpace& y);
/// Same, but gives up (nullopt) once more than `cap` maps exist.
std::optional<std::vector<Graph>> hom_graphs_bounded(const FinSpace& x, const FinSpace& y,
                                                     std::size_t cap);
/// Monotone maps between bare preorders (continuity at preorder level).
std::optional<std::vector<Graph>> hom_graphs_bounded(const Preorder& x, const Preorder& y,
                                                     std::size_t cap);
std::vector<ContMap> hom_set(const FinSpace& x, const FinSpace& y);

Product product(const FinSpace& x, const FinSpace& y);
Subobject equalizer(const ContMap& h, const ContMap& k);
CokernelPair cokernel_pair(const Subobject& m);
EpiMonoFactorization factorize(const ContMap& f);
Reflected t0_reflection(const FinSpace& x);
PullbackResult pullback(const ContMap& f, const ContMap& g);

}  // namespace regclose
