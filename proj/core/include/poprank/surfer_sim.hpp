#ifndef POPRANK_SURFER_SIM_HPP_
#define POPRANK_SURFER_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "poprank/popularity.hpp"
#include "poprank/transition.hpp"

namespace poprank {

struct SimConfig {
    std::size_t steps = 1'000'000;
    std::uint64_t rng_seed = 0;
    double epsilon = 0.15;
    std::size_t burn_in = 0;
    /// Independent walkers, each on its own thread with a private histogram.
    std::size_t walkers = 1;
};

struct VisitHistogram {
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const noexcept;
    PopularityVector distribution() const;

    friend bool operator==(const VisitHistogram &, const VisitHistogram &) = default;
};

/**
 * Monte Carlo random object finder.
 *
 * A walker starts at an object drawn from the prior. On every step it
 * restarts to a fresh prior draw with probability epsilon, or always when
 * its current object is dangling, and otherwise follows one outgoing link
 * drawn from the transition distribution. Each walker spends burn_in
 * unrecorded steps, then records its share of the remaining steps - burn_in
 * visits; walker w gets (steps - burn_in) / walkers visits plus one when
 * w < (steps - burn_in) % walkers, and seeds its generator with
 * splitmix64(rng_seed + w). The merged histogram is therefore a fixed
 * function of (rng_seed, walkers) and always totals steps - burn_in.
 *
 * Throws InputError on size mismatch, steps <= burn_in, zero walkers or
 * epsilon outside (0, 1].
 */
VisitHistogram simulate(const TransitionStructure &transition, const PopularityVector &prior,
                        const SimConfig &cfg);

} // namespace poprank

#endif // POPRANK_SURFER_SIM_HPP_
