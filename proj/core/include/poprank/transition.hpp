#ifndef POPRANK_TRANSITION_HPP_
#define POPRANK_TRANSITION_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poprank/object_model.hpp"

namespace poprank {

/**
 * Popularity propagation factor per relationship type.
 *
 * Factors are non-negative and only their ratios matter: the transition
 * structure normalizes them per object, so any positive rescaling of the
 * whole assignment ranks identically. A factor of zero disables the type.
 */
class PpfAssignment {
public:
    PpfAssignment() = default;
    PpfAssignment(std::initializer_list<std::pair<const std::string, double>> factors);

    /// Throws InputError for negative or non-finite values.
    void set(std::string rel_name, double gamma);

    std::optional<double> get(std::string_view rel_name) const;
    double at(std::string_view rel_name) const;
    const std::map<std::string, double, std::less<>> &factors() const noexcept { return factors_; }
    std::size_t size() const noexcept { return factors_.size(); }

    PpfAssignment scaled(double c) const;

    /// Throws InputError naming the first relationship type of `graph` without
    /// a factor, or when every factor used by the graph is zero.
    void validate_for(const ObjectGraph &graph) const;

    /// Factors aligned with graph.relationship_types(); validates first.
    std::vector<double> factors_for(const ObjectGraph &graph) const;

    friend bool operator==(const PpfAssignment &, const PpfAssignment &) = default;

private:
    std::map<std::string, double, std::less<>> factors_;
};

/**
 * Row-stochastic object-to-object transition structure in CSR form, with
 * the transposed (incoming) view used by pull-style power iteration.
 *
 * From object o, mass splits across its active relationship types in
 * proportion to their factors, then uniformly across o's links of each type.
 * Objects without any active outgoing link are dangling.
 */
class TransitionStructure {
public:
    struct Entry {
        ObjectId target;
        double probability;
    };
    struct InEntry {
        ObjectId source;
        double probability;
    };

    std::size_t object_count() const noexcept { return dangling_.size(); }
    std::size_t entry_count() const noexcept { return out_entries_.size(); }

    std::span<const Entry> out(ObjectId o) const {
        return {out_entries_.data() + out_offsets_[o], out_offsets_[o + 1] - out_offsets_[o]};
    }
    std::span<const InEntry> in(ObjectId o) const {
        return {in_entries_.data() + in_offsets_[o], in_offsets_[o + 1] - in_offsets_[o]};
    }
    bool dangling(ObjectId o) const { return dangling_[o] != 0; }
    std::size_t dangling_count() const noexcept;

    friend TransitionStructure build_transition(const ObjectGraph &graph, const PpfAssignment &ppf);

private:
    std::vector<std::size_t> out_offsets_{0};
    std::vector<Entry> out_entries_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<InEntry> in_entries_;
    std::vector<unsigned char> dangling_;
};

/// Throws InputError when `ppf` lacks a factor for one of the graph's
/// relationship types or assigns zero to all of them.
TransitionStructure build_transition(const ObjectGraph &graph, const PpfAssignment &ppf);

} // namespace poprank

#endif // POPRANK_TRANSITION_HPP_
