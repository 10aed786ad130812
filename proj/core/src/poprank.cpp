#include "poprank/poprank.hpp"

#include <cmath>
#include <string>

#include "poprank/error.hpp"

namespace poprank {

void validate(const PopRankConfig &cfg) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0))
        throw InputError("epsilon must lie in (0, 1]");
    if (!(cfg.tol > 0.0))
        throw InputError("tolerance must be positive");
}

void validate_prior(const PopularityVector &prior, std::size_t n) {
    if (prior.size() != n)
        throw InputError("prior has " + std::to_string(prior.size()) + " entries for " +
                         std::to_string(n) + " objects");
    double sum = 0.0;
    for (double x : prior) {
        if (!std::isfinite(x) || x < 0.0)
            throw InputError("prior entries must be non-negative");
        sum += x;
    }
    if (n != 0 && std::abs(sum - 1.0) > 1e-9)
        throw InputError("prior must sum to 1");
}

PopularityVector poprank_step(const TransitionStructure &transition, const PopularityVector &prior,
                              const PopularityVector &scores, double epsilon) {
    const std::size_t n = transition.object_count();
    double dangling = 0.0;
    for (ObjectId o = 0; o < n; ++o)
        if (transition.dangling(o))
            dangling += scores[o];

    const double walk = 1.0 - epsilon;
    const double restart = epsilon + walk * dangling;
    PopularityVector next(n);
    for (ObjectId v = 0; v < n; ++v) {
        double pulled = 0.0;
        for (const auto &in : transition.in(v))
            pulled += in.probability * scores[in.source];
        next[v] = restart * prior[v] + walk * pulled;
    }
    return next;
}

RankResult compute_poprank(const TransitionStructure &transition, const PopularityVector &prior,
                   const PopRankConfig &cfg) {
    validate(cfg);
    validate_prior(prior, transition.object_count());

    RankResult result;
    result.scores = prior;
    if (prior.empty()) {
        result.converged = true;
        return result;
    }
    while (result.iterations < cfg.max_iter) {
        auto next = poprank_step(transition, prior, result.scores, cfg.epsilon);
        normalize_l1(next);
        result.residual = l1_distance(next, result.scores);
        result.scores = std::move(next);
        ++result.iterations;
        if (result.residual < cfg.tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

RankResult compute_poprank(const ObjectGraph &graph, const PpfAssignment &ppf,
                   const PopularityVector &prior, const PopRankConfig &cfg) {
    validate_prior(prior, graph.object_count());
    return compute_poprank(build_transition(graph, ppf), prior, cfg);
}

} // namespace poprank
