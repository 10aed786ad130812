#ifndef POPRANK_PPF_LEARNING_HPP_
#define POPRANK_PPF_LEARNING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "poprank/object_model.hpp"
#include "poprank/poprank.hpp"
#include "poprank/popularity.hpp"
#include "poprank/transition.hpp"

namespace poprank {

/// Expert ordering constraints: each pair (higher, lower) asks for
/// score[higher] > score[lower].
class PartialRanking {
public:
    using Constraint = std::pair<ObjectId, ObjectId>;

    PartialRanking() = default;

    /// Throws InputError on (a, a) or when both (a, b) and (b, a) appear.
    /// Repeated pairs are kept once.
    explicit PartialRanking(std::vector<Constraint> pairs);

    /// Every pair implied by a full order, top first. Throws on repeated ids.
    static PartialRanking from_order(std::span<const ObjectId> order);

    const std::vector<Constraint> &pairs() const noexcept { return pairs_; }
    bool empty() const noexcept { return pairs_.empty(); }
    std::size_t size() const noexcept { return pairs_.size(); }

private:
    std::vector<Constraint> pairs_;
};

struct Disagreement {
    std::size_t violations = 0;
    std::size_t total = 0;

    friend bool operator==(const Disagreement &, const Disagreement &) = default;
};

/// Counts constraints whose higher object does not score strictly above the
/// lower one; ties are violations. Throws InputError for ids outside `scores`.
Disagreement rank_disagreement(const PopularityVector &scores, const PartialRanking &expert);

struct LearnConfig {
    static constexpr std::size_t kMaxGridCandidates = 10000;

    std::size_t grid_resolution = 5;
    std::size_t refine_iters = 200;
    double refine_step = 0.1;
    std::uint64_t rng_seed = 0;
    PopRankConfig poprank_cfg{};
};

/// Factor levels tried per relationship type: k / (r - 1) for k = 0..r-1,
/// with the zero level lifted to 0.05. r = 5 gives {0.05, 0.25, 0.5, 0.75, 1}.
std::vector<double> grid_levels(std::size_t resolution);

struct LearnResult {
    PpfAssignment ppf;
    Disagreement disagreement;
    std::size_t grid_violations = 0;  // best count after the grid phase
    std::size_t grid_candidates = 0;
    std::size_t evaluations = 0;  // poprank runs, both phases
};

/**
 * Searches propagation factors that make PopRank agree with `expert`.
 *
 * Phase one scores every combination of grid levels (or 10,000 seeded
 * uniform samples when the full grid is larger), keeping the first candidate
 * with the fewest violations. Phase two refines the winner one factor at a
 * time by +/- step, clamped to [0.01, 1], accepting strict improvements only
 * and halving the step after a sweep without one. It stops at zero
 * violations or after refine_iters evaluations.
 *
 * Throws InputError for an empty ranking, a graph without relationship
 * types, or an invalid configuration.
 */
LearnResult learn_ppf(const ObjectGraph &graph, const PopularityVector &prior,
                      const PartialRanking &expert, const LearnConfig &cfg = {});

} // namespace poprank

#endif // POPRANK_PPF_LEARNING_HPP_
