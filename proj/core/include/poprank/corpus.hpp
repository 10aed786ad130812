#ifndef POPRANK_CORPUS_HPP_
#define POPRANK_CORPUS_HPP_

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "poprank/formats.hpp"
#include "poprank/object_model.hpp"
#include "poprank/ppf_learning.hpp"
#include "poprank/web_popularity.hpp"

namespace poprank {

/// Locations of the five corpus files.
struct CorpusPaths {
    std::string schemas;
    std::string objects;
    std::string links;
    std::string pages;
    std::string page_map;

    /// schemas.tsv, objects.tsv, links.tsv, pages.tsv and page_objects.tsv in `dir`.
    static CorpusPaths in_directory(const std::string &dir);
};

struct CorpusStats {
    std::size_t records = 0;
    std::size_t objects = 0;
    std::size_t merged_records = 0;  // records folded into an existing object
    std::size_t conflicts = 0;
    std::size_t links_read = 0;
    std::size_t links_unresolved = 0;
    std::size_t links_duplicate = 0;
    std::size_t hyperlinks = 0;
    std::size_t hyperlinks_unresolved = 0;
    std::size_t hyperlinks_duplicate = 0;
    std::size_t blocks = 0;
    std::size_t blocks_unresolved = 0;
};

/// A loaded object warehouse: deduplicated object graph, page graph and the
/// block map tying them together.
struct CorpusBundle {
    CorpusPaths paths;
    SchemaRegistry schemas;
    ObjectGraph graph;
    std::vector<std::string> page_ids;  // dense page index -> page id
    PageGraph pages;
    PageObjectMap page_map;
    CorpusStats stats;
};

/**
 * Reads and cross-links the five corpus files. Relationship types are
 * declared implicitly by the links file: the first link naming a
 * relationship fixes its endpoint types.
 *
 * Unresolvable links, hyperlinks and block entries are dropped with a
 * diagnostic line on `diag` unless `strict`, in which case they throw.
 * Merge and drop counts are summarized on `diag` as key=value lines.
 */
CorpusBundle load_corpus(const CorpusPaths &paths, bool strict, std::ostream &diag);

/// Same as load_corpus but over already-parsed file contents.
CorpusBundle assemble_corpus(SchemaRegistry schemas, const std::vector<ObjectRecord> &records,
                             const std::vector<RawLink> &links, const std::vector<PageDecl> &pages,
                             const std::vector<BlockDecl> &blocks, bool strict, std::ostream &diag);

/// Writes the five files of a corpus into `paths`.
void write_corpus(const CorpusPaths &paths, const SchemaRegistry &schemas,
                  const std::vector<ObjectRecord> &records, const std::vector<RawLink> &links,
                  const std::vector<PageDecl> &pages, const std::vector<BlockDecl> &blocks);

/// Resolves expert references against the corpus. Throws InputError for
/// references to unknown objects.
PartialRanking resolve_expert(const ExpertDecl &expert, const ObjectGraph &graph);

} // namespace poprank

#endif // POPRANK_CORPUS_HPP_
