#ifndef HYPFILL_GEODESICS_HPP
#define HYPFILL_GEODESICS_HPP

#include <cstdint>
#include <vector>

#include "hypfill/filling.hpp"

namespace hypfill {

/// Outcome of the geodesic structure sweep in the tau >= (alpha+1)/(alpha-1)
/// regime. Each flag is true when the corresponding property held with zero
/// violations; witnesses replay the violating geodesics.
struct GeodesicReport {
  int n0 = 0;  // smallest positive n with n alpha^{1-n} <= 1/(alpha+1)
  bool no_spike = true;          // no (x,n)~(z,n+1)~(y,n) with x != y
  bool no_ladder = true;         // no (x1,n)~(x2,n+1)~(y2,n+1)~(y1,n), x1 != y1
  bool no_down_up = true;        // level sequence has no strict interior max
  bool horizontal_bounded = true;  // horizontal runs shorter than 2 n0
  bool normal_form_exists = true;  // descend / <=2n0-1 horizontal / ascend
  std::vector<std::vector<Vertex>> witnesses;
  long long pairs_checked = 0;
  long long geodesics_checked = 0;
  int capped_pairs = 0;  // pairs whose enumeration hit the cap

  bool all_passed() const {
    return no_spike && no_ladder && no_down_up && horizontal_bounded &&
           normal_form_exists;
  }
  /// Throws LemmaViolation when any flag failed.
  void require_clean() const;
};

int horizontal_geodesic_bound_n0(double alpha);

/// True when some interior entry is strictly larger than entries on both
/// sides of it (a path that goes down and comes back up).
bool has_interior_level_max(const std::vector<int>& levels);

/// Enumerates every geodesic between all vertex pairs with levels at most
/// level_budget (enumeration capped per pair; hitting the cap is reported,
/// not ignored) and checks the structure properties above. The normal-form
/// existence check is decided by a direct layered search, so it is exact
/// even for capped pairs. Throws NotInRegime unless
/// tau >= (alpha+1)/(alpha-1).
GeodesicReport geodesic_structure_check(const FillingGraph& g, int level_budget = -1,
                                        long long per_pair_cap = 100000);

}  // namespace hypfill

#endif
