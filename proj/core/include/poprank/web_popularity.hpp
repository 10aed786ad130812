#ifndef POPRANK_WEB_POPULARITY_HPP_
#define POPRANK_WEB_POPULARITY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "poprank/object_model.hpp"
#include "poprank/popularity.hpp"

namespace poprank {

using PageId = std::uint32_t;

/// Page hyperlink graph over dense page indices. Self-loops are kept,
/// duplicate hyperlinks are dropped.
class PageGraph {
public:
    PageGraph() = default;

    /// Throws InputError for endpoints outside [0, page_count).
    PageGraph(std::size_t page_count, std::span<const std::pair<PageId, PageId>> hyperlinks);

    std::size_t page_count() const noexcept { return out_links_.size(); }
    std::size_t link_count() const noexcept { return link_count_; }
    std::size_t duplicates_dropped() const noexcept { return duplicates_dropped_; }

    std::span<const PageId> out_links(PageId page) const { return out_links_.at(page); }

private:
    std::vector<std::vector<PageId>> out_links_;
    std::size_t link_count_ = 0;
    std::size_t duplicates_dropped_ = 0;
};

/// A block of `page` holding `object`. A missing weight means "split the page
/// uniformly"; a page may not mix weighted and unweighted blocks.
struct BlockEntry {
    PageId page = 0;
    ObjectId object = 0;
    std::optional<double> block_weight;
};

struct PageObjectMap {
    std::vector<BlockEntry> entries;
};

struct PageRankOptions {
    static constexpr double kDefaultDamping = 0.85;
    static constexpr double kDefaultTol = 1e-10;
    static constexpr std::size_t kDefaultMaxIter = 1000;

    double damping = kDefaultDamping;
    double tol = kDefaultTol;
    std::size_t max_iter = kDefaultMaxIter;
};

/**
 * Standard PageRank by power iteration from the uniform vector.
 *
 * Teleport is uniform with probability 1 - damping, and dangling pages spread
 * their whole mass uniformly. Stops when the L1 change drops below tol or
 * after max_iter sweeps. Throws InputError for an empty graph or invalid
 * options.
 */
RankResult pagerank(const PageGraph &graph, const PageRankOptions &options = {});

/// One power-iteration sweep; exposed for residual checks.
PopularityVector pagerank_step(const PageGraph &graph, const PopularityVector &scores,
                               double damping);

/// Per-entry weights after per-page normalization, aligned with map.entries.
/// Pages whose explicit weights are all zero contribute nothing.
std::vector<double> normalized_block_weights(const PageObjectMap &map);

/**
 * Web-popularity prior of every object: page score times normalized block
 * weight, summed per object, then scaled to sum to one. Falls back to the
 * uniform distribution when no object receives any mass.
 */
PopularityVector web_popularity(std::size_t object_count, std::span<const double> page_scores,
                                const PageObjectMap &map);

inline PopularityVector web_popularity(const ObjectGraph &objects,
                                       std::span<const double> page_scores,
                                       const PageObjectMap &map) {
    return web_popularity(objects.object_count(), page_scores, map);
}

} // namespace poprank

#endif // POPRANK_WEB_POPULARITY_HPP_
