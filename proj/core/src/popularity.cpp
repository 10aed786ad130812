#include "poprank/popularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace poprank {

double normalize_l1(std::vector<double> &v) {
    double sum = 0.0;
    for (double x : v)
        sum += x;
    if (sum > 0.0)
        for (double &x : v)
            x /= sum;
    return sum;
}

double l1_distance(const std::vector<double> &a, const std::vector<double> &b) {
    if (a.size() != b.size())
        throw std::invalid_argument("l1_distance: size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d += std::abs(a[i] - b[i]);
    return d;
}

double total_variation(const std::vector<double> &a, const std::vector<double> &b) {
    return 0.5 * l1_distance(a, b);
}

std::vector<std::size_t> order_by_score(const std::vector<double> &scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

std::vector<std::size_t> ranks_by_score(const std::vector<double> &scores) {
    const auto order = order_by_score(scores);
    std::vector<std::size_t> ranks(scores.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        ranks[order[pos]] = pos + 1;
    return ranks;
}

namespace {

// Inversions of `seq` by merge sort.
std::size_t count_inversions(std::vector<std::size_t> &seq, std::vector<std::size_t> &scratch,
                             std::size_t lo, std::size_t hi) {
    if (hi - lo < 2)
        return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::size_t inv = count_inversions(seq, scratch, lo, mid) + count_inversions(seq, scratch, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (seq[j] < seq[i]) {
            inv += mid - i;
            scratch[k++] = seq[j++];
        } else {
            scratch[k++] = seq[i++];
        }
    }
    while (i < mid)
        scratch[k++] = seq[i++];
    while (j < hi)
        scratch[k++] = seq[j++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              seq.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

} // namespace

double kendall_tau(const std::vector<std::size_t> &ranks_a, const std::vector<std::size_t> &ranks_b) {
    if (ranks_a.size() != ranks_b.size())
        throw std::invalid_argument("kendall_tau: size mismatch");
    const std::size_t n = ranks_a.size();
    if (n < 2)
        return 1.0;
    // walk items in order of ranking a; discordant pairs are inversions of b's ranks
    std::vector<std::size_t> by_a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (ranks_a[i] == 0 || ranks_a[i] > n)
            throw std::invalid_argument("kendall_tau: ranks must be 1..n");
        by_a[ranks_a[i] - 1] = ranks_b[i];
    }
    std::vector<std::size_t> scratch(n);
    const double discordant = static_cast<double>(count_inversions(by_a, scratch, 0, n));
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return (pairs - 2.0 * discordant) / pairs;
}

} // namespace poprank
