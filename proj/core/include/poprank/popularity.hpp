#ifndef POPRANK_POPULARITY_HPP_
#define POPRANK_POPULARITY_HPP_

#include <cstddef>
#include <vector>

namespace poprank {

/// Non-negative scores summing to one, indexed by object id (or page index).
using PopularityVector = std::vector<double>;

/// Outcome of a power iteration. Non-convergence is not an error: the last
/// iterate is returned with converged == false and its residual.
struct RankResult {
    PopularityVector scores;
    std::size_t iterations = 0;
    double residual = 0.0;  // L1 change of the final sweep
    bool converged = false;
};

/// Scales `v` in place to sum to one. Returns the original sum.
double normalize_l1(std::vector<double> &v);

double l1_distance(const std::vector<double> &a, const std::vector<double> &b);

/// Half the L1 distance.
double total_variation(const std::vector<double> &a, const std::vector<double> &b);

/// Indices sorted by descending score, ties broken by ascending index.
std::vector<std::size_t> order_by_score(const std::vector<double> &scores);

/// 1-based rank of every index under order_by_score.
std::vector<std::size_t> ranks_by_score(const std::vector<double> &scores);

/// Kendall tau between two strict orderings given as per-item rank vectors
/// of equal length. Fewer than two items yields 1 by convention.
double kendall_tau(const std::vector<std::size_t> &ranks_a, const std::vector<std::size_t> &ranks_b);

} // namespace poprank

#endif // POPRANK_POPULARITY_HPP_
