#ifndef POPRANK_REPORTS_HPP_
#define POPRANK_REPORTS_HPP_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "poprank/object_model.hpp"
#include "poprank/popularity.hpp"

namespace poprank {

/**
 * TSV report: a `# poprank <kind>` line, `# key=value` metadata lines, a
 * column header line and one line per row. Reading a written report gives
 * back an equal value.
 */
struct TabularReport {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::string> meta(const std::string &key) const;

    friend bool operator==(const TabularReport &, const TabularReport &) = default;
};

void write_report(std::ostream &out, const TabularReport &report);

/// Throws ParseError on a malformed report.
TabularReport read_report(std::istream &in, const std::string &file);

struct RankedObject {
    std::size_t rank = 0;
    ObjectId object_id = 0;
    std::string type_name;
    KeyTuple key;
    double score = 0.0;

    friend bool operator==(const RankedObject &, const RankedObject &) = default;
};

/// Objects by descending score, ties by ascending object id.
struct RankReport {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<RankedObject> ranking;

    friend bool operator==(const RankReport &, const RankReport &) = default;
};

RankReport make_rank_report(const ObjectGraph &graph, const PopularityVector &scores,
                            std::vector<std::pair<std::string, std::string>> metadata);

TabularReport to_table(const RankReport &report);
RankReport rank_report_from_table(const TabularReport &table);

} // namespace poprank

#endif // POPRANK_REPORTS_HPP_
