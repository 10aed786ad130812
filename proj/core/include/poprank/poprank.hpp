#ifndef POPRANK_POPRANK_HPP_
#define POPRANK_POPRANK_HPP_

#include <cstddef>

#include "poprank/object_model.hpp"
#include "poprank/popularity.hpp"
#include "poprank/transition.hpp"

namespace poprank {

struct PopRankConfig {
    static constexpr double kDefaultEpsilon = 0.15;
    static constexpr double kDefaultTol = 1e-10;
    static constexpr std::size_t kDefaultMaxIter = 1000;

    double epsilon = kDefaultEpsilon;  // per-step restart probability
    double tol = kDefaultTol;
    std::size_t max_iter = kDefaultMaxIter;
};

/// Throws InputError unless epsilon is in (0, 1] and tol is positive.
void validate(const PopRankConfig &cfg);

/// Throws InputError unless `prior` has `n` non-negative entries summing to 1.
void validate_prior(const PopularityVector &prior, std::size_t n);

/**
 * One application of the PopRank operator:
 *   next = eps * W + (1 - eps) * (M^T r + D * W),
 * where D is the mass currently on dangling objects.
 */
PopularityVector poprank_step(const TransitionStructure &transition, const PopularityVector &prior,
                              const PopularityVector &scores, double epsilon);

/**
 * PopRank fixed point by power iteration starting from the prior. Walk mass
 * follows PPF-weighted relationship links and restarts to the prior with
 * probability epsilon, or always from a dangling object.
 */
RankResult compute_poprank(const TransitionStructure &transition, const PopularityVector &prior,
                   const PopRankConfig &cfg = {});

RankResult compute_poprank(const ObjectGraph &graph, const PpfAssignment &ppf,
                   const PopularityVector &prior, const PopRankConfig &cfg = {});

} // namespace poprank

#endif // POPRANK_POPRANK_HPP_
