#include "poprank/web_popularity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "poprank/error.hpp"

namespace poprank {

PageGraph::PageGraph(std::size_t page_count,
                     std::span<const std::pair<PageId, PageId>> hyperlinks)
    : out_links_(page_count) {
    for (const auto &[src, dst] : hyperlinks) {
        if (src >= page_count || dst >= page_count)
            throw InputError("hyperlink " + std::to_string(src) + " -> " + std::to_string(dst) +
                             " references a missing page");
        out_links_[src].push_back(dst);
    }
    for (auto &links : out_links_) {
        const auto before = links.size();
        std::sort(links.begin(), links.end());
        links.erase(std::unique(links.begin(), links.end()), links.end());
        duplicates_dropped_ += before - links.size();
        link_count_ += links.size();
    }
}

PopularityVector pagerank_step(const PageGraph &graph, const PopularityVector &scores,
                               double damping) {
    const std::size_t n = graph.page_count();
    PopularityVector next(n, 0.0);
    double dangling = 0.0;
    for (PageId p = 0; p < n; ++p) {
        const auto out = graph.out_links(p);
        if (out.empty()) {
            dangling += scores[p];
            continue;
        }
        const double share = damping * scores[p] / static_cast<double>(out.size());
        for (PageId q : out)
            next[q] += share;
    }
    const double base = ((1.0 - damping) + damping * dangling) / static_cast<double>(n);
    for (double &x : next)
        x += base;
    return next;
}

RankResult pagerank(const PageGraph &graph, const PageRankOptions &options) {
    if (graph.page_count() == 0)
        throw InputError("pagerank: the page graph is empty");
    if (!(options.damping > 0.0 && options.damping < 1.0))
        throw InputError("pagerank: damping must lie in (0, 1)");
    if (!(options.tol > 0.0))
        throw InputError("pagerank: tolerance must be positive");

    const std::size_t n = graph.page_count();
    RankResult result;
    result.scores.assign(n, 1.0 / static_cast<double>(n));

    for (result.iterations = 0; result.iterations < options.max_iter;) {
        auto next = pagerank_step(graph, result.scores, options.damping);
        normalize_l1(next);
        result.residual = l1_distance(next, result.scores);
        result.scores = std::move(next);
        ++result.iterations;
        if (result.residual < options.tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

std::vector<double> normalized_block_weights(const PageObjectMap &map) {
    struct PageBlocks {
        std::size_t weighted = 0;
        std::size_t unweighted = 0;
        double total = 0.0;
    };
    PageId max_page = 0;
    for (const auto &e : map.entries)
        max_page = std::max(max_page, e.page);
    std::vector<PageBlocks> pages(map.entries.empty() ? 0 : std::size_t{max_page} + 1);

    for (const auto &e : map.entries) {
        auto &pb = pages[e.page];
        if (e.block_weight) {
            const double w = *e.block_weight;
            if (!std::isfinite(w) || w < 0.0)
                throw InputError("block weight on page " + std::to_string(e.page) +
                                 " must be a non-negative number");
            ++pb.weighted;
            pb.total += w;
        } else {
            ++pb.unweighted;
        }
        if (pb.weighted != 0 && pb.unweighted != 0)
            throw InputError("page " + std::to_string(e.page) +
                             " mixes weighted and unweighted object blocks");
    }

    std::vector<double> weights;
    weights.reserve(map.entries.size());
    for (const auto &e : map.entries) {
        const auto &pb = pages[e.page];
        if (!e.block_weight)
            weights.push_back(1.0 / static_cast<double>(pb.unweighted));
        else
            weights.push_back(pb.total > 0.0 ? *e.block_weight / pb.total : 0.0);
    }
    return weights;
}

PopularityVector web_popularity(std::size_t object_count, std::span<const double> page_scores,
                                const PageObjectMap &map) {
    for (const auto &e : map.entries) {
        if (e.page >= page_scores.size())
            throw InputError("page-object map references missing page " + std::to_string(e.page));
        if (e.object >= object_count)
            throw InputError("page-object map references missing object " +
                             std::to_string(e.object));
    }
    const auto weights = normalized_block_weights(map);

    PopularityVector prior(object_count, 0.0);
    for (std::size_t i = 0; i < map.entries.size(); ++i)
        prior[map.entries[i].object] += page_scores[map.entries[i].page] * weights[i];

    if (normalize_l1(prior) <= 0.0 && object_count != 0)
        std::fill(prior.begin(), prior.end(), 1.0 / static_cast<double>(object_count));
    return prior;
}

} // namespace poprank
