#pragma once

// Canonical forms, homeomorphism search and the enumeration of all
// homeomorphism classes of n-point spaces.  The canonical form of a space
// is the minimal encoding of its specialization matrix over all point
// permutations; for finite spaces the preorder determines the topology, so
// equality of forms is exactly homeomorphism.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "regclose/finspace.hpp"

namespace regclose {

inline constexpr int kDefaultMaxPoints = 4;
inline constexpr int kHardMaxPoints = 7;
inline constexpr int kScenarioMaxPoints = 6;

/// Default universe ceiling: REGCLOSE_MAX_POINTS when set (clamped to the
/// hard limit), otherwise 4.
int configured_max_points();

std::string canonical_form(const FinSpace& x);
/// The permutation realizing the canonical form: new_index = perm[old_index].
std::vector<int> canonical_permutation(const FinSpace& x);

/// A homeomorphism x -> y as a point map, when one exists.
std::optional<Graph> find_homeomorphism(const FinSpace& x, const FinSpace& y);

/// One representative per homeomorphism class of spaces with exactly n
/// points, ordered by canonical form.  `limit` is a cost guard.
std::vector<FinSpace> enumerate_spaces(int n, int limit = -1);

/// Number of homeomorphism classes, by brute pairwise isomorphism search.
/// Test oracle for enumerate_spaces; exponential, keep n small.
int count_classes_by_iso_search(const std::vector<FinSpace>& candidates);

/// Caches enumerations and hom-sets between universe spaces.  Not
/// thread-safe; use one Workspace per thread of evaluation.
class Workspace {
 public:
  explicit Workspace(int limit = kHardMaxPoints) : limit_(limit) {}

  const std::vector<FinSpace>& spaces_of_size(int n);
  /// Sizes 0..max_points concatenated, in canonical order.
  std::vector<FinSpace> universe(int max_points);
  /// Cached hom-graphs for spaces owned by this workspace; computed on the
  /// fly for foreign spaces.
  const std::vector<Graph>& homs(const FinSpace& x, const FinSpace& y);

 private:
  int limit_;
  std::map<int, std::vector<FinSpace>> by_size_;
  std::set<const void*> owned_;
  std::map<std::pair<const void*, const void*>, std::vector<Graph>> hom_cache_;
  std::map<std::pair<std::string, std::string>, std::vector<Graph>> foreign_cache_;
};

}  // namespace regclose
