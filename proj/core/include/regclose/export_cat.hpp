#pragma once

// Bridge from the space layer to the category oracle: materializes the full
// subcategory of finite Top on a list of spaces, and offers space-level
// universal-property checks for constructions whose surrounding hom-sets
// are too large to materialize.

#include <vector>

#include "regclose/fincat.hpp"
#include "regclose/finspace.hpp"

namespace regclose {

struct ExportedCategory {
  FinCategory cat;
  std::vector<FinSpace> spaces;

  int object_of(const FinSpace& x) const;         // -1 when absent
  int morphism_id(const ContMap& f) const;        // -1 when absent
  ContMap as_map(int morphism_id) const;
};

/// Full subcategory of finite Top on the given objects; every hom-set is
/// materialized.  Throws InputError when the morphism count exceeds the
/// budget.
ExportedCategory export_category(const std::vector<FinSpace>& spaces,
                                 std::size_t morphism_budget = 500'000);

// Space-level equivalents of the fincat verifiers, quantifying test objects
// over an explicit list instead of a materialized category.
UniversalCertificate verify_equalizer_direct(const Subobject& e, const ContMap& h,
                                             const ContMap& k,
                                             const std::vector<FinSpace>& tests);
UniversalCertificate verify_cokernel_pair_direct(const CokernelPair& cp,
                                                 const std::vector<FinSpace>& tests);
UniversalCertificate verify_product_direct(const Product& pr,
                                           const std::vector<FinSpace>& tests);
UniversalCertificate verify_pullback_direct(const PullbackResult& pb, const ContMap& f,
                                            const ContMap& g,
                                            const std::vector<FinSpace>& tests);

}  // namespace regclose
