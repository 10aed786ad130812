#include "poprank/reports.hpp"

#include <charconv>

#include "poprank/error.hpp"
#include "poprank/formats.hpp"

namespace poprank {

namespace {

constexpr std::string_view kBanner = "# poprank ";

std::vector<std::string> split_tabs(const std::string &line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find('\t', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos)
            return out;
        start = pos + 1;
    }
}

template <typename T>
T parse_field(const std::string &text, const char *what) {
    T value{};
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw InputError(std::string("rank report: invalid ") + what + " '" + text + "'");
    return value;
}

} // namespace

std::optional<std::string> TabularReport::meta(const std::string &key) const {
    for (const auto &[k, v] : metadata)
        if (k == key)
            return v;
    return std::nullopt;
}

void write_report(std::ostream &out, const TabularReport &report) {
    out << kBanner << report.kind << '\n';
    for (const auto &[k, v] : report.metadata)
        out << "# " << k << '=' << v << '\n';
    auto line = [&out](const std::vector<std::string> &fields) {
        for (std::size_t i = 0; i < fields.size(); ++i)
            out << (i ? "\t" : "") << fields[i];
        out << '\n';
    };
    line(report.columns);
    for (const auto &row : report.rows)
        line(row);
}

TabularReport read_report(std::istream &in, const std::string &file) {
    TabularReport report;
    std::string line;
    std::size_t number = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++number;
        if (number == 1) {
            if (!line.starts_with(kBanner))
                throw ParseError(file, number, "missing '# poprank <kind>' banner");
            report.kind = line.substr(kBanner.size());
            continue;
        }
        if (!header && line.starts_with("# ")) {
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError(file, number, "metadata line is not '# key=value'");
            report.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        auto fields = split_tabs(line);
        if (!header) {
            report.columns = std::move(fields);
            header = true;
            continue;
        }
        if (fields.size() != report.columns.size())
            throw ParseError(file, number,
                             "row has " + std::to_string(fields.size()) + " fields, header has " +
                                 std::to_string(report.columns.size()));
        report.rows.push_back(std::move(fields));
    }
    if (number == 0)
        throw ParseError(file, 1, "empty report");
    if (!header)
        throw ParseError(file, number, "missing column header");
    return report;
}

RankReport make_rank_report(const ObjectGraph &graph, const PopularityVector &scores,
                            std::vector<std::pair<std::string, std::string>> metadata) {
    RankReport report;
    report.metadata = std::move(metadata);
    const auto order = order_by_score(scores);
    report.ranking.reserve(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto &obj = graph.object(static_cast<ObjectId>(order[pos]));
        report.ranking.push_back({pos + 1, obj.object_id, obj.type_name, obj.key, scores[order[pos]]});
    }
    return report;
}

TabularReport to_table(const RankReport &report) {
    TabularReport table{"rank", report.metadata, {"rank", "object_id", "type", "key", "score"}, {}};
    table.rows.reserve(report.ranking.size());
    for (const auto &r : report.ranking)
        table.rows.push_back({std::to_string(r.rank), std::to_string(r.object_id), r.type_name,
                              join_key(r.key), format_double(r.score)});
    return table;
}

RankReport rank_report_from_table(const TabularReport &table) {
    if (table.kind != "rank")
        throw InputError("expected a rank report, found '" + table.kind + "'");
    if (table.columns != std::vector<std::string>{"rank", "object_id", "type", "key", "score"})
        throw InputError("rank report has unexpected columns");
    RankReport report;
    report.metadata = table.metadata;
    for (const auto &row : table.rows)
        report.ranking.push_back({parse_field<std::size_t>(row[0], "rank"),
                                  parse_field<ObjectId>(row[1], "object id"), row[2],
                                  split_key(row[3]), parse_field<double>(row[4], "score")});
    return report;
}

} // namespace poprank
