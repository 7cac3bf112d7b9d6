#pragma once

// Regular closure operators: the reflection formula route and the
// brute-force meet over regular subobjects, closure tables over space
// universes, the closure axioms, and the theorem-level sweeps built on top
// of them.

#include <optional>
#include <string>
#include <vector>

#include "regclose/canonical.hpp"
#include "regclose/finspace.hpp"
#include "regclose/hulls.hpp"
#include "regclose/subcat.hpp"

namespace regclose {

enum class ClosureMethod { Formula, BruteForce };

struct ClosureResult {
  Subobject input;
  Mask closure = 0;
  ClosureMethod method = ClosureMethod::Formula;
  bool exact = false;
  int bound = 0;                      // enumeration bound when inexact
  std::vector<Mask> witnesses;        // brute force: the regular carriers met
  std::optional<CokernelPair> coker;  // formula: when small enough to keep
  std::optional<Reflection> reflection;
};

struct RegularityWitness {
  ContMap h;
  ContMap k;
};

struct RegularityResult {
  bool regular = false;
  bool exact = false;
  int bound = 0;
  std::optional<RegularityWitness> witness;
};

/// Search for a pair into a member equalizing exactly this subobject.
RegularityResult is_A_regular(const Subobject& m, const SubcatSpec& a, Workspace& ws);

/// The closure as the equalizer of the reflected cokernel pair.  Exact for
/// every (weak) reflection; witnesses are materialized when the apex is
/// small enough.
ClosureResult closure_formula(const Subobject& m, const SubcatSpec& a);
/// Carrier-only formula path; never materializes a topology.
Mask closure_formula_carrier(const Preorder& ambient, Mask carrier, const SubcatSpec& a);

/// The meet of all regular carriers above m found within the bound.
ClosureResult closure_bruteforce(const Subobject& m, const SubcatSpec& a, Workspace& ws);

/// A-regular carriers of an ambient space, by exhaustive equalizer sweep;
/// entry [mask] tells whether that carrier arose as an equalizer.
std::vector<char> regular_carriers(const FinSpace& x, const SubcatSpec& a, Workspace& ws,
                                   int* bound_used, bool* exact);

/// Regularity of the diagonal of x, decided through the formula route at
/// preorder level; valid for any subcategory with a (weak) reflector since
/// the formula value is itself regular.
bool diagonal_is_regular(const FinSpace& x, const SubcatSpec& a);

struct TableEntry {
  int space = 0;
  Mask subset = 0;
  Mask closure = 0;
  ClosureMethod method = ClosureMethod::Formula;
  bool exact = false;
};

struct ClosureOperatorTable {
  std::string subcat;
  std::vector<FinSpace> universe;
  std::vector<TableEntry> entries;  // spaces in universe order, subsets ascending
  bool all_exact() const;
  Mask closure_of(int space, Mask subset) const;
};

/// method defaults to the formula when a reflector exists, brute force
/// otherwise; pass `force_method` to pin one side (the oracle-agreement
/// suite compares both).
ClosureOperatorTable closure_operator_table(const SubcatSpec& a,
                                            const std::vector<FinSpace>& universe, Workspace& ws,
                                            std::optional<ClosureMethod> force_method = {});

struct AxiomCounterexample {
  std::string axiom;
  int space = 0;
  Mask subset = 0;
  std::string detail;
};

struct AxiomReport {
  bool extension = true;
  bool monotonicity = true;
  bool continuity = true;
  bool idempotency = true;
  std::vector<AxiomCounterexample> counterexamples;
  bool all_pass() const { return extension && monotonicity && continuity && idempotency; }
};

/// Checks the closure-operator axioms; continuity quantifies over every
/// continuous map between universe spaces.
AxiomReport check_axioms(const ClosureOperatorTable& t, Workspace& ws);

struct CompareCounterexample {
  int space = 0;
  Mask subset = 0;
  Mask closure_a = 0;
  Mask closure_b = 0;
};

struct CompareResult {
  bool same = false;
  bool exact = false;
  int max_points = 0;
  std::optional<CompareCounterexample> counterexample;
};

/// Entrywise comparison of the two induced closure tables; subobject
/// isomorphism over a fixed ambient is carrier equality.
CompareResult same_closure(const SubcatSpec& a, const SubcatSpec& b,
                           const std::vector<FinSpace>& universe, Workspace& ws);

struct EpiDenseViolation {
  int dom_space = 0;
  int cod_space = 0;
  Graph map;
  bool cancellable = false;
  bool dense = false;
};

struct EpiDenseReport {
  int checked = 0;
  std::vector<EpiDenseViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Cancellable iff dense, for every map between members of the universe.
EpiDenseReport epi_dense_consistency(const SubcatSpec& a, const std::vector<FinSpace>& universe,
                                     Workspace& ws);

struct Thm41Row {
  int space = 0;         // index into the universe; a member of b
  bool alpha_mono = false;
  bool diag_regular = false;
  bool in_s_hull = false;
  bool tables_agree = false;  // restricted to this ambient
};

struct Thm41Report {
  std::vector<Thm41Row> rows;
  bool precondition = false;  // alpha mono for all (U, member) pairs
  bool a = false;             // all diagonals regular
  bool b = false;             // all members in the S-hull
  bool c = false;             // closure tables agree over the whole universe
  std::optional<CompareCounterexample> table_counterexample;
  bool defect = false;        // precondition holds yet the equivalences fail
};

Thm41Report thm41_sweep(const SubcatSpec& a, const SubcatSpec& b,
                        const std::vector<FinSpace>& universe, Workspace& ws);

}  // namespace regclose
