#include "poprank/transition.hpp"

#include <algorithm>
#include <cmath>

#include "poprank/error.hpp"

namespace poprank {

PpfAssignment::PpfAssignment(std::initializer_list<std::pair<const std::string, double>> factors) {
    for (const auto &[name, gamma] : factors)
        set(name, gamma);
}

void PpfAssignment::set(std::string rel_name, double gamma) {
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw InputError("propagation factor for '" + rel_name +
                         "' must be a non-negative number");
    factors_.insert_or_assign(std::move(rel_name), gamma);
}

std::optional<double> PpfAssignment::get(std::string_view rel_name) const {
    const auto it = factors_.find(rel_name);
    if (it == factors_.end())
        return std::nullopt;
    return it->second;
}

double PpfAssignment::at(std::string_view rel_name) const {
    if (const auto g = get(rel_name))
        return *g;
    throw InputError("no propagation factor for relationship type '" + std::string(rel_name) + "'");
}

PpfAssignment PpfAssignment::scaled(double c) const {
    PpfAssignment out;
    for (const auto &[name, gamma] : factors_)
        out.set(name, gamma * c);
    return out;
}

void PpfAssignment::validate_for(const ObjectGraph &graph) const {
    bool any_positive = graph.relationship_types().empty();
    for (const auto &rt : graph.relationship_types())
        any_positive |= at(rt.rel_name) > 0.0;
    if (!any_positive)
        throw InputError("every propagation factor is zero");
}

std::vector<double> PpfAssignment::factors_for(const ObjectGraph &graph) const {
    validate_for(graph);
    std::vector<double> out;
    out.reserve(graph.relationship_types().size());
    for (const auto &rt : graph.relationship_types())
        out.push_back(at(rt.rel_name));
    return out;
}

std::size_t TransitionStructure::dangling_count() const noexcept {
    return static_cast<std::size_t>(std::count(dangling_.begin(), dangling_.end(), 1));
}

TransitionStructure build_transition(const ObjectGraph &graph, const PpfAssignment &ppf) {
    const auto gamma = ppf.factors_for(graph);
    const std::size_t n = graph.object_count();
    const std::size_t types = gamma.size();

    // out-degree of every object in every relationship type
    std::vector<std::size_t> degree(n * types, 0);
    for (std::size_t t = 0; t < types; ++t)
        for (const auto &e : graph.links()[t])
            ++degree[std::size_t{e.source} * types + t];

    // active factor mass per object
    std::vector<double> active(n, 0.0);
    for (std::size_t o = 0; o < n; ++o)
        for (std::size_t t = 0; t < types; ++t)
            if (gamma[t] > 0.0 && degree[o * types + t] != 0)
                active[o] += gamma[t];

    TransitionStructure ts;
    ts.dangling_.assign(n, 0);
    ts.out_offsets_.assign(n + 1, 0);
    for (std::size_t t = 0; t < types; ++t) {
        if (gamma[t] <= 0.0)
            continue;
        for (const auto &e : graph.links()[t])
            ++ts.out_offsets_[std::size_t{e.source} + 1];
    }
    for (std::size_t o = 0; o < n; ++o) {
        ts.out_offsets_[o + 1] += ts.out_offsets_[o];
        ts.dangling_[o] = active[o] > 0.0 ? 0 : 1;
    }

    ts.out_entries_.resize(ts.out_offsets_[n]);
    std::vector<std::size_t> cursor(ts.out_offsets_.begin(), ts.out_offsets_.end() - 1);
    for (std::size_t t = 0; t < types; ++t) {
        if (gamma[t] <= 0.0)
            continue;
        for (const auto &e : graph.links()[t]) {
            const std::size_t o = e.source;
            const double p = (gamma[t] / active[o]) / static_cast<double>(degree[o * types + t]);
            ts.out_entries_[cursor[o]++] = {e.target, p};
        }
    }

    ts.in_offsets_.assign(n + 1, 0);
    for (const auto &entry : ts.out_entries_)
        ++ts.in_offsets_[std::size_t{entry.target} + 1];
    for (std::size_t o = 0; o < n; ++o)
        ts.in_offsets_[o + 1] += ts.in_offsets_[o];
    ts.in_entries_.resize(ts.out_entries_.size());
    std::vector<std::size_t> in_cursor(ts.in_offsets_.begin(), ts.in_offsets_.end() - 1);
    for (ObjectId o = 0; o < n; ++o)
        for (const auto &entry : ts.out(o))
            ts.in_entries_[in_cursor[entry.target]++] = {o, entry.probability};

    return ts;
}

} // namespace poprank
