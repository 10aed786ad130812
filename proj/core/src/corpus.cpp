#include "poprank/corpus.hpp"

#include <fstream>
#include <unordered_map>

#include "poprank/error.hpp"

namespace poprank {

namespace {

std::ifstream open_input(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    return in;
}

std::ofstream open_output(const std::string &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    return out;
}

void warn(std::ostream &diag, const char *event, const std::string &detail) {
    diag << "level=warn event=" << event << " detail=\"" << detail << "\"\n";
}

} // namespace

CorpusPaths CorpusPaths::in_directory(const std::string &dir) {
    const std::string base = dir.empty() || dir.back() == '/' ? dir : dir + "/";
    return {base + "schemas.tsv", base + "objects.tsv", base + "links.tsv", base + "pages.tsv",
            base + "page_objects.tsv"};
}

CorpusBundle load_corpus(const CorpusPaths &paths, bool strict, std::ostream &diag) {
    auto schemas_in = open_input(paths.schemas);
    auto objects_in = open_input(paths.objects);
    auto links_in = open_input(paths.links);
    auto pages_in = open_input(paths.pages);
    auto map_in = open_input(paths.page_map);

    auto schemas = read_schemas(schemas_in, paths.schemas);
    const auto records = read_objects(objects_in, paths.objects);
    const auto links = read_links(links_in, paths.links);
    const auto pages = read_pages(pages_in, paths.pages);
    const auto blocks = read_page_map(map_in, paths.page_map);

    auto bundle = assemble_corpus(std::move(schemas), records, links, pages, blocks, strict, diag);
    bundle.paths = paths;
    return bundle;
}

CorpusBundle assemble_corpus(SchemaRegistry schemas, const std::vector<ObjectRecord> &records,
                             const std::vector<RawLink> &links, const std::vector<PageDecl> &pages,
                             const std::vector<BlockDecl> &blocks, bool strict, std::ostream &diag) {
    CorpusBundle bundle;
    auto &stats = bundle.stats;

    auto objects = merge_records(records, schemas);
    stats.records = records.size();
    stats.objects = objects.size();
    stats.merged_records = records.size() - objects.size();
    for (const auto &obj : objects)
        stats.conflicts += obj.conflict_count;

    std::vector<RelationshipType> rel_types;
    std::unordered_map<std::string, std::size_t> seen_rel;
    for (const auto &l : links)
        if (seen_rel.emplace(l.rel_name, rel_types.size()).second)
            rel_types.push_back({l.rel_name, l.source_type, l.target_type});

    auto built = build_graph(std::move(objects), std::move(rel_types), links, {strict});
    for (const auto &msg : built.unresolved)
        warn(diag, "unresolved_link", msg);
    stats.links_read = links.size();
    stats.links_unresolved = built.unresolved.size();
    stats.links_duplicate = built.duplicates_dropped;
    bundle.graph = std::move(built.graph);

    std::unordered_map<std::string, PageId> page_index;
    for (const auto &p : pages) {
        if (!page_index.emplace(p.page_id, static_cast<PageId>(bundle.page_ids.size())).second)
            throw InputError("page '" + p.page_id + "' is declared twice");
        bundle.page_ids.push_back(p.page_id);
    }
    std::vector<std::pair<PageId, PageId>> hyperlinks;
    for (const auto &p : pages) {
        for (const auto &target : p.out_links) {
            ++stats.hyperlinks;
            const auto it = page_index.find(target);
            if (it == page_index.end()) {
                std::string msg = "page '" + p.page_id + "' links to undeclared page '" + target + "'";
                if (strict)
                    throw InputError(msg);
                warn(diag, "unresolved_hyperlink", msg);
                ++stats.hyperlinks_unresolved;
                continue;
            }
            hyperlinks.emplace_back(page_index.at(p.page_id), it->second);
        }
    }
    bundle.pages = PageGraph(bundle.page_ids.size(), hyperlinks);
    stats.hyperlinks_duplicate = bundle.pages.duplicates_dropped();

    for (const auto &b : blocks) {
        ++stats.blocks;
        const auto page = page_index.find(b.page_id);
        const auto object = bundle.graph.find(b.object_type, b.object_key);
        if (page == page_index.end() || !object) {
            std::string msg = page == page_index.end()
                                  ? "block references undeclared page '" + b.page_id + "'"
                                  : "block on page '" + b.page_id + "' references unknown object " +
                                        format_object_ref({b.object_type, b.object_key});
            if (strict)
                throw InputError(msg);
            warn(diag, "unresolved_block", msg);
            ++stats.blocks_unresolved;
            continue;
        }
        bundle.page_map.entries.push_back({page->second, *object, b.block_weight});
    }
    // rejects pages that mix weighted and unweighted blocks
    normalized_block_weights(bundle.page_map);

    diag << "level=info event=merge records=" << stats.records << " objects=" << stats.objects
         << " merged=" << stats.merged_records << " conflicts=" << stats.conflicts << '\n';
    diag << "level=info event=links read=" << stats.links_read
         << " stored=" << bundle.graph.edge_count() << " unresolved=" << stats.links_unresolved
         << " duplicates=" << stats.links_duplicate << '\n';
    diag << "level=info event=pages pages=" << bundle.page_ids.size()
         << " hyperlinks=" << bundle.pages.link_count()
         << " unresolved=" << stats.hyperlinks_unresolved
         << " duplicates=" << stats.hyperlinks_duplicate << '\n';
    diag << "level=info event=blocks read=" << stats.blocks
         << " stored=" << bundle.page_map.entries.size()
         << " unresolved=" << stats.blocks_unresolved << '\n';

    bundle.schemas = std::move(schemas);
    return bundle;
}

void write_corpus(const CorpusPaths &paths, const SchemaRegistry &schemas,
                  const std::vector<ObjectRecord> &records, const std::vector<RawLink> &links,
                  const std::vector<PageDecl> &pages, const std::vector<BlockDecl> &blocks) {
    auto s = open_output(paths.schemas);
    write_schemas(s, schemas);
    auto o = open_output(paths.objects);
    write_objects(o, records);
    auto l = open_output(paths.links);
    write_links(l, links);
    auto p = open_output(paths.pages);
    write_pages(p, pages);
    auto m = open_output(paths.page_map);
    write_page_map(m, blocks);
}

PartialRanking resolve_expert(const ExpertDecl &expert, const ObjectGraph &graph) {
    auto resolve = [&](const ObjectRef &ref) {
        const auto id = graph.find(ref.type_name, ref.key);
        if (!id)
            throw InputError("expert ranking references unknown object " + format_object_ref(ref));
        return *id;
    };
    std::vector<ObjectId> order;
    order.reserve(expert.order.size());
    for (const auto &ref : expert.order)
        order.push_back(resolve(ref));

    auto pairs = PartialRanking::from_order(order).pairs();
    for (const auto &[hi, lo] : expert.pairs)
        pairs.emplace_back(resolve(hi), resolve(lo));
    return PartialRanking(std::move(pairs));
}

} // namespace poprank
