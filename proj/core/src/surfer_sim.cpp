#include "poprank/surfer_sim.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "poprank/error.hpp"
#include "poprank/poprank.hpp"
#include "random.hpp"

namespace poprank {

std::uint64_t VisitHistogram::total() const noexcept {
    std::uint64_t sum = 0;
    for (auto c : counts)
        sum += c;
    return sum;
}

PopularityVector VisitHistogram::distribution() const {
    PopularityVector out(counts.size(), 0.0);
    const double n = static_cast<double>(total());
    if (n > 0)
        for (std::size_t i = 0; i < counts.size(); ++i)
            out[i] = static_cast<double>(counts[i]) / n;
    return out;
}

namespace {

// Inverse-CDF tables, built once and shared read-only by all walkers.
class Sampler {
public:
    Sampler(const TransitionStructure &transition, const PopularityVector &prior)
        : transition_(transition), prior_cdf_(prior.size()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < prior.size(); ++i)
            prior_cdf_[i] = acc += prior[i];

        link_cdf_.reserve(transition.entry_count());
        for (ObjectId o = 0; o < transition.object_count(); ++o) {
            acc = 0.0;
            for (const auto &e : transition.out(o))
                link_cdf_.push_back(acc += e.probability);
        }
        offsets_.reserve(transition.object_count() + 1);
        std::size_t off = 0;
        offsets_.push_back(0);
        for (ObjectId o = 0; o < transition.object_count(); ++o)
            offsets_.push_back(off += transition.out(o).size());
    }

    ObjectId from_prior(std::mt19937_64 &rng) const {
        return static_cast<ObjectId>(pick(prior_cdf_.begin(), prior_cdf_.end(), rng));
    }

    ObjectId follow(ObjectId o, std::mt19937_64 &rng) const {
        const auto first = link_cdf_.begin() + static_cast<std::ptrdiff_t>(offsets_[o]);
        const auto last = link_cdf_.begin() + static_cast<std::ptrdiff_t>(offsets_[o + 1]);
        return transition_.out(o)[pick(first, last, rng)].target;
    }

    bool dangling(ObjectId o) const { return transition_.dangling(o); }

private:
    using Iter = std::vector<double>::const_iterator;

    // Index of the first cumulative weight above a uniform draw scaled to the
    // table's total, so rounding in the last entry never overruns.
    static std::size_t pick(Iter first, Iter last, std::mt19937_64 &rng) {
        const double u = detail::uniform_unit(rng) * *(last - 1);
        const auto it = std::upper_bound(first, last, u);
        return static_cast<std::size_t>(std::min(it, last - 1) - first);
    }

    const TransitionStructure &transition_;
    std::vector<double> prior_cdf_;
    std::vector<double> link_cdf_;
    std::vector<std::size_t> offsets_;
};

std::vector<std::uint64_t> walk(const Sampler &sampler, std::size_t n, double epsilon,
                                std::uint64_t seed, std::size_t burn_in, std::size_t recorded) {
    std::vector<std::uint64_t> counts(n, 0);
    std::mt19937_64 rng(seed);
    ObjectId at = sampler.from_prior(rng);
    const std::size_t steps = burn_in + recorded;
    for (std::size_t s = 0; s < steps; ++s) {
        if (s != 0) {
            if (sampler.dangling(at) || detail::uniform_unit(rng) < epsilon)
                at = sampler.from_prior(rng);
            else
                at = sampler.follow(at, rng);
        }
        if (s >= burn_in)
            ++counts[at];
    }
    return counts;
}

} // namespace

VisitHistogram simulate(const TransitionStructure &transition, const PopularityVector &prior,
                        const SimConfig &cfg) {
    validate_prior(prior, transition.object_count());
    if (prior.empty())
        throw InputError("simulate: no objects");
    if (cfg.steps == 0 || cfg.steps <= cfg.burn_in)
        throw InputError("simulate: steps must exceed burn_in");
    if (cfg.walkers == 0)
        throw InputError("simulate: at least one walker is required");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0))
        throw InputError("simulate: epsilon must lie in (0, 1]");

    const Sampler sampler(transition, prior);
    const std::size_t n = prior.size();
    const std::size_t recorded = cfg.steps - cfg.burn_in;

    std::vector<std::vector<std::uint64_t>> partial(cfg.walkers);
    auto run = [&](std::size_t w) {
        const std::size_t share = recorded / cfg.walkers + (w < recorded % cfg.walkers ? 1 : 0);
        partial[w] = walk(sampler, n, cfg.epsilon, detail::splitmix64(cfg.rng_seed + w),
                          cfg.burn_in, share);
    };

    if (cfg.walkers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(cfg.walkers);
        for (std::size_t w = 0; w < cfg.walkers; ++w)
            threads.emplace_back(run, w);
    }

    VisitHistogram hist;
    hist.counts.assign(n, 0);
    for (const auto &p : partial)
        for (std::size_t i = 0; i < n; ++i)
            hist.counts[i] += p[i];
    return hist;
}

} // namespace poprank
