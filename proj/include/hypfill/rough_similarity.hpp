#ifndef HYPFILL_ROUGH_SIMILARITY_HPP
#define HYPFILL_ROUGH_SIMILARITY_HPP

#include <cstdint>

#include "hypfill/uniformize.hpp"

namespace hypfill {

struct RoughSimilarityReport {
  double slope = 0.0;       // log(alpha_hat)/eps
  double best_c = 0.0;      // smallest additive constant over sampled pairs
  double max_violation = 0.0;  // 0 by construction of best_c
  double coverage_c = 0.0;  // how far target vertices are from the image
  long long pairs = 0;
};

/// Builds the filling of the source's boundary (scaled by eps/e) with
/// parameters (alpha_hat, tau_hat) and fits the additive constant of the
/// level-indexed nearest-net-point map from source vertices to target
/// vertices. All pairs when there are at most pair_cap, otherwise a seeded
/// sample. Throws ScaleMismatch when the scaled boundary has diameter >= 1.
RoughSimilarityReport rough_similarity(const UniformizedFilling& source,
                                       double alpha_hat, double tau_hat,
                                       long long pair_cap = 10000,
                                       std::uint64_t seed = 1);

}  // namespace hypfill

#endif
