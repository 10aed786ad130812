#include "poprank/formats.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <string_view>

#include "poprank/error.hpp"

namespace poprank {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::vector<std::string> split_list(std::string_view s, char sep) {
    std::vector<std::string> out;
    if (s.empty())
        return out;
    for (auto part : split(s, sep))
        if (!part.empty())
            out.emplace_back(part);
    return out;
}

// Calls fn(line_number, fields) for each data line.
template <typename Fn>
void for_each_record(std::istream &in, const std::string &file, Fn &&fn) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        fn(number, split(line, '\t'));
    }
    if (in.bad())
        throw InputError(file + ": read error");
}

void expect_fields(const std::string &file, std::size_t line, std::size_t got, std::size_t lo,
                   std::size_t hi) {
    if (got < lo || got > hi) {
        std::string want = lo == hi ? std::to_string(lo)
                                    : std::to_string(lo) + " to " + std::to_string(hi);
        throw ParseError(file, line,
                         "expected " + want + " tab-separated fields, found " + std::to_string(got));
    }
}

void expect_nonempty(const std::string &file, std::size_t line, std::string_view value,
                     const char *what) {
    if (value.empty())
        throw ParseError(file, line, std::string("empty ") + what);
}

double parse_number(const std::string &file, std::size_t line, std::string_view text,
                    const char *what) {
    double value = 0.0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(file, line, std::string("invalid ") + what + " '" + std::string(text) + "'");
    return value;
}

ObjectRef parse_ref_at(const std::string &file, std::size_t line, std::string_view text) {
    try {
        return parse_object_ref(std::string(text));
    } catch (const InputError &e) {
        throw ParseError(file, line, e.what());
    }
}

} // namespace

std::string format_object_ref(const ObjectRef &ref) {
    return ref.type_name + ":" + join_key(ref.key);
}

ObjectRef parse_object_ref(const std::string &text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
        throw InputError("object reference '" + text + "' is not of the form type:key");
    return {text.substr(0, colon), split_key(std::string_view(text).substr(colon + 1))};
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

SchemaRegistry read_schemas(std::istream &in, const std::string &file) {
    SchemaRegistry registry;
    for_each_record(in, file, [&](std::size_t line, const auto &f) {
        expect_fields(file, line, f.size(), 3, 3);
        expect_nonempty(file, line, f[0], "type name");
        ObjectTypeSchema schema{std::string(f[0]), split_list(f[1], ','), split_list(f[2], ',')};
        try {
            registry.register_schema(std::move(schema));
        } catch (const InputError &e) {
            throw ParseError(file, line, e.what());
        }
    });
    return registry;
}

std::vector<ObjectRecord> read_objects(std::istream &in, const std::string &file) {
    std::vector<ObjectRecord> records;
    for_each_record(in, file, [&](std::size_t line, const auto &f) {
        expect_fields(file, line, f.size(), 3, 4);
        expect_nonempty(file, line, f[0], "record id");
        expect_nonempty(file, line, f[1], "type name");
        ObjectRecord rec;
        rec.record_id = f[0];
        rec.type_name = f[1];
        for (auto pair : split(f[2], ';')) {
            if (pair.empty())
                continue;
            const auto eq = pair.find('=');
            if (eq == std::string_view::npos || eq == 0)
                throw ParseError(file, line, "attribute '" + std::string(pair) + "' is not attr=value");
            const auto [it, fresh] = rec.attribute_values.emplace(pair.substr(0, eq), pair.substr(eq + 1));
            if (!fresh)
                throw ParseError(file, line, "attribute '" + it->first + "' given twice");
        }
        if (f.size() == 4 && !f[3].empty())
            rec.source_page = std::string(f[3]);
        records.push_back(std::move(rec));
    });
    return records;
}

std::vector<RawLink> read_links(std::istream &in, const std::string &file) {
    std::vector<RawLink> links;
    for_each_record(in, file, [&](std::size_t line, const auto &f) {
        expect_fields(file, line, f.size(), 5, 5);
        expect_nonempty(file, line, f[0], "source type");
        expect_nonempty(file, line, f[2], "relationship name");
        expect_nonempty(file, line, f[3], "target type");
        links.push_back({std::string(f[0]), split_key(f[1]), std::string(f[2]), std::string(f[3]),
                         split_key(f[4])});
    });
    return links;
}

std::vector<PageDecl> read_pages(std::istream &in, const std::string &file) {
    std::vector<PageDecl> pages;
    for_each_record(in, file, [&](std::size_t line, const auto &f) {
        expect_fields(file, line, f.size(), 1, 2);
        expect_nonempty(file, line, f[0], "page id");
        pages.push_back({std::string(f[0]), f.size() == 2 ? split_list(f[1], ',')
                                                          : std::vector<std::string>{}});
    });
    return pages;
}

std::vector<BlockDecl> read_page_map(std::istream &in, const std::string &file) {
    std::vector<BlockDecl> blocks;
    for_each_record(in, file, [&](std::size_t line, const auto &f) {
        expect_fields(file, line, f.size(), 3, 4);
        expect_nonempty(file, line, f[0], "page id");
        expect_nonempty(file, line, f[1], "object type");
        BlockDecl b{std::string(f[0]), std::string(f[1]), split_key(f[2]), std::nullopt};
        if (f.size() == 4 && !f[3].empty()) {
            const double w = parse_number(file, line, f[3], "block weight");
            if (!std::isfinite(w) || w < 0.0)
                throw ParseError(file, line, "block weight must be a non-negative number");
            b.block_weight = w;
        }
        blocks.push_back(std::move(b));
    });
    return blocks;
}

PpfAssignment read_ppf(std::istream &in, const std::string &file) {
    PpfAssignment ppf;
    for_each_record(in, file, [&](std::size_t line, const auto &f) {
        expect_fields(file, line, f.size(), 2, 2);
        expect_nonempty(file, line, f[0], "relationship name");
        if (ppf.get(f[0]))
            throw ParseError(file, line, "factor for '" + std::string(f[0]) + "' given twice");
        const double gamma = parse_number(file, line, f[1], "propagation factor");
        try {
            ppf.set(std::string(f[0]), gamma);
        } catch (const InputError &e) {
            throw ParseError(file, line, e.what());
        }
    });
    return ppf;
}

ExpertDecl read_expert(std::istream &in, const std::string &file) {
    ExpertDecl expert;
    for_each_record(in, file, [&](std::size_t line, const auto &f) {
        if (f.size() == 1) {
            expert.order.push_back(parse_ref_at(file, line, f[0]));
        } else if (f.size() == 3 && f[1] == ">") {
            expert.pairs.emplace_back(parse_ref_at(file, line, f[0]), parse_ref_at(file, line, f[2]));
        } else {
            throw ParseError(file, line, "expected 'object_ref' or 'object_ref<TAB>><TAB>object_ref'");
        }
    });
    return expert;
}

void write_schemas(std::ostream &out, const SchemaRegistry &schemas) {
    auto join = [](const std::vector<std::string> &v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + v[i];
        return s;
    };
    for (const auto &s : schemas.schemas())
        out << s.type_name << '\t' << join(s.attributes) << '\t' << join(s.key_attributes) << '\n';
}

void write_objects(std::ostream &out, const std::vector<ObjectRecord> &records) {
    for (const auto &r : records) {
        out << r.record_id << '\t' << r.type_name << '\t';
        bool first = true;
        for (const auto &[attr, value] : r.attribute_values) {
            out << (first ? "" : ";") << attr << '=' << value;
            first = false;
        }
        if (r.source_page)
            out << '\t' << *r.source_page;
        out << '\n';
    }
}

void write_links(std::ostream &out, const std::vector<RawLink> &links) {
    for (const auto &l : links)
        out << l.source_type << '\t' << join_key(l.source_key) << '\t' << l.rel_name << '\t'
            << l.target_type << '\t' << join_key(l.target_key) << '\n';
}

void write_pages(std::ostream &out, const std::vector<PageDecl> &pages) {
    for (const auto &p : pages) {
        out << p.page_id << '\t';
        for (std::size_t i = 0; i < p.out_links.size(); ++i)
            out << (i ? "," : "") << p.out_links[i];
        out << '\n';
    }
}

void write_page_map(std::ostream &out, const std::vector<BlockDecl> &blocks) {
    for (const auto &b : blocks) {
        out << b.page_id << '\t' << b.object_type << '\t' << join_key(b.object_key);
        if (b.block_weight)
            out << '\t' << format_double(*b.block_weight);
        out << '\n';
    }
}

void write_ppf(std::ostream &out, const PpfAssignment &ppf) {
    for (const auto &[name, gamma] : ppf.factors())
        out << name << '\t' << format_double(gamma) << '\n';
}

void write_expert(std::ostream &out, const ExpertDecl &expert) {
    for (const auto &ref : expert.order)
        out << format_object_ref(ref) << '\n';
    for (const auto &[hi, lo] : expert.pairs)
        out << format_object_ref(hi) << "\t>\t" << format_object_ref(lo) << '\n';
}

std::vector<ObjectRecord> graph_records(const ObjectGraph &graph) {
    std::vector<ObjectRecord> records;
    records.reserve(graph.object_count());
    for (const auto &obj : graph.objects())
        records.push_back({std::to_string(obj.object_id), obj.type_name, obj.attribute_values,
                           std::nullopt});
    return records;
}

std::vector<RawLink> graph_links(const ObjectGraph &graph) {
    std::vector<RawLink> links;
    links.reserve(graph.edge_count());
    for (std::size_t r = 0; r < graph.relationship_types().size(); ++r) {
        const auto &rt = graph.relationship_types()[r];
        for (const auto &e : graph.links()[r])
            links.push_back({rt.source_type, graph.object(e.source).key, rt.rel_name,
                             rt.target_type, graph.object(e.target).key});
    }
    return links;
}

} // namespace poprank
