#include "poprank/ppf_learning.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <string>

#include "poprank/error.hpp"
#include "random.hpp"

namespace poprank {

PartialRanking::PartialRanking(std::vector<Constraint> pairs) {
    std::set<Constraint> seen;
    for (const auto &[hi, lo] : pairs) {
        if (hi == lo)
            throw InputError("expert ranking orders object " + std::to_string(hi) +
                             " above itself");
        if (seen.contains({lo, hi}))
            throw InputError("expert ranking contains contradictory pairs for objects " +
                             std::to_string(hi) + " and " + std::to_string(lo));
        if (seen.insert({hi, lo}).second)
            pairs_.emplace_back(hi, lo);
    }
}

PartialRanking PartialRanking::from_order(std::span<const ObjectId> order) {
    std::set<ObjectId> ids(order.begin(), order.end());
    if (ids.size() != order.size())
        throw InputError("expert order lists an object more than once");
    std::vector<Constraint> pairs;
    pairs.reserve(order.size() * (order.size() - (order.empty() ? 0 : 1)) / 2);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            pairs.emplace_back(order[i], order[j]);
    return PartialRanking(std::move(pairs));
}

Disagreement rank_disagreement(const PopularityVector &scores, const PartialRanking &expert) {
    Disagreement d;
    d.total = expert.size();
    for (const auto &[hi, lo] : expert.pairs()) {
        if (hi >= scores.size() || lo >= scores.size())
            throw InputError("expert ranking references unknown object " +
                             std::to_string(std::max(hi, lo)));
        if (!(scores[hi] > scores[lo]))
            ++d.violations;
    }
    return d;
}

std::vector<double> grid_levels(std::size_t resolution) {
    if (resolution < 2)
        throw InputError("grid resolution must be at least 2");
    std::vector<double> levels(resolution);
    for (std::size_t k = 0; k < resolution; ++k)
        levels[k] = static_cast<double>(k) / static_cast<double>(resolution - 1);
    levels[0] = 0.05;
    return levels;
}

namespace {

constexpr double kMinFactor = 0.01;
constexpr double kMaxFactor = 1.0;

class Objective {
public:
    Objective(const ObjectGraph &graph, const PopularityVector &prior,
              const PartialRanking &expert, const PopRankConfig &cfg)
        : graph_(graph), prior_(prior), expert_(expert), cfg_(cfg) {}

    PpfAssignment assignment(const std::vector<double> &gamma) const {
        PpfAssignment ppf;
        for (std::size_t t = 0; t < gamma.size(); ++t)
            ppf.set(graph_.relationship_types()[t].rel_name, gamma[t]);
        return ppf;
    }

    Disagreement operator()(const std::vector<double> &gamma) {
        ++evaluations_;
        const auto ranked = compute_poprank(build_transition(graph_, assignment(gamma)), prior_, cfg_);
        return rank_disagreement(ranked.scores, expert_);
    }

    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    const ObjectGraph &graph_;
    const PopularityVector &prior_;
    const PartialRanking &expert_;
    PopRankConfig cfg_;
    std::size_t evaluations_ = 0;
};

// Number of grid combinations, saturating at cap + 1.
std::size_t grid_size(std::size_t levels, std::size_t types, std::size_t cap) {
    std::size_t total = 1;
    for (std::size_t t = 0; t < types; ++t) {
        total *= levels;
        if (total > cap)
            return cap + 1;
    }
    return total;
}

} // namespace

LearnResult learn_ppf(const ObjectGraph &graph, const PopularityVector &prior,
                      const PartialRanking &expert, const LearnConfig &cfg) {
    if (expert.empty())
        throw InputError("expert ranking is empty");
    const std::size_t types = graph.relationship_types().size();
    if (types == 0)
        throw InputError("graph has no relationship types to learn factors for");
    if (!(cfg.refine_step > 0.0))
        throw InputError("refine step must be positive");
    validate(cfg.poprank_cfg);
    validate_prior(prior, graph.object_count());
    for (const auto &[hi, lo] : expert.pairs())
        if (hi >= graph.object_count() || lo >= graph.object_count())
            throw InputError("expert ranking references unknown object " +
                             std::to_string(std::max(hi, lo)));

    const auto levels = grid_levels(cfg.grid_resolution);
    Objective objective(graph, prior, expert, cfg.poprank_cfg);

    const std::size_t cap = LearnConfig::kMaxGridCandidates;
    const std::size_t combos = grid_size(levels.size(), types, cap);
    const bool sampled = combos > cap;
    std::mt19937_64 rng(cfg.rng_seed);

    std::vector<double> best;
    Disagreement best_d{std::numeric_limits<std::size_t>::max(), 0};
    std::vector<double> candidate(types);
    std::size_t evaluated = 0;
    for (std::size_t i = 0; i < std::min(combos, cap); ++i) {
        if (sampled) {
            for (auto &g : candidate)
                g = levels[detail::uniform_index(rng, levels.size())];
        } else {
            // first relationship type is the most significant digit
            std::size_t rest = i;
            for (std::size_t t = types; t-- > 0;) {
                candidate[t] = levels[rest % levels.size()];
                rest /= levels.size();
            }
        }
        const auto d = objective(candidate);
        ++evaluated;
        if (d.violations < best_d.violations) {
            best_d = d;
            best = candidate;
        }
        // any later candidate could at best tie, and ties keep the earlier one
        if (best_d.violations == 0)
            break;
    }

    LearnResult result;
    result.grid_violations = best_d.violations;
    result.grid_candidates = evaluated;

    double step = cfg.refine_step;
    std::size_t refine_evals = 0;
    while (best_d.violations > 0 && refine_evals < cfg.refine_iters) {
        bool improved = false;
        for (std::size_t t = 0; t < types && best_d.violations > 0; ++t) {
            for (const double sign : {1.0, -1.0}) {
                if (refine_evals >= cfg.refine_iters)
                    break;
                auto trial = best;
                trial[t] = std::clamp(trial[t] + sign * step, kMinFactor, kMaxFactor);
                if (trial[t] == best[t])
                    continue;
                const auto d = objective(trial);
                ++refine_evals;
                if (d.violations < best_d.violations) {
                    best_d = d;
                    best = std::move(trial);
                    improved = true;
                    break;
                }
            }
        }
        if (!improved)
            step *= 0.5;
        // below double resolution every trial equals the current point
        if (step < 1e-15)
            break;
    }

    result.ppf = objective.assignment(best);
    result.disagreement = best_d;
    result.evaluations = objective.evaluations();
    return result;
}

} // namespace poprank
