#ifndef POPRANK_FORMATS_HPP_
#define POPRANK_FORMATS_HPP_

// Line-oriented TSV formats for corpora, factor files and expert rankings.
// All files are UTF-8 with LF line endings. Blank lines and lines starting
// with '#' are skipped. Parsers throw ParseError naming file and line.
//
//   schemas    type_name \t attr1,attr2,... \t key1,key2,...
//   objects    record_id \t type_name \t attr=value;attr=value;... [\t source_page]
//   links      source_type \t source_key \t rel_name \t target_type \t target_key
//   pages      page_id [\t page_id,page_id,...]
//   page map   page_id \t object_type \t object_key [\t block_weight]
//   ppf        rel_name \t gamma
//   expert     object_ref                       (one per line, top first)
//              object_ref \t > \t object_ref    (explicit pair)
//
// Key tuples join the key attribute values with '|'. An object_ref is
// type_name:key. Attribute values must not contain TAB or ';' and key values
// must not contain '|'; there is no escaping.

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "poprank/object_model.hpp"
#include "poprank/transition.hpp"

namespace poprank {

struct PageDecl {
    std::string page_id;
    std::vector<std::string> out_links;
};

struct BlockDecl {
    std::string page_id;
    std::string object_type;
    KeyTuple object_key;
    std::optional<double> block_weight;
};

struct ObjectRef {
    std::string type_name;
    KeyTuple key;

    friend bool operator==(const ObjectRef &, const ObjectRef &) = default;
};

struct ExpertDecl {
    std::vector<ObjectRef> order;                         // list lines, top first
    std::vector<std::pair<ObjectRef, ObjectRef>> pairs;  // explicit (higher, lower)
    bool empty() const noexcept { return order.empty() && pairs.empty(); }
};

std::string format_object_ref(const ObjectRef &ref);
ObjectRef parse_object_ref(const std::string &text);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

SchemaRegistry read_schemas(std::istream &in, const std::string &file);
std::vector<ObjectRecord> read_objects(std::istream &in, const std::string &file);
std::vector<RawLink> read_links(std::istream &in, const std::string &file);
std::vector<PageDecl> read_pages(std::istream &in, const std::string &file);
std::vector<BlockDecl> read_page_map(std::istream &in, const std::string &file);
PpfAssignment read_ppf(std::istream &in, const std::string &file);
ExpertDecl read_expert(std::istream &in, const std::string &file);

void write_schemas(std::ostream &out, const SchemaRegistry &schemas);
void write_objects(std::ostream &out, const std::vector<ObjectRecord> &records);
void write_links(std::ostream &out, const std::vector<RawLink> &links);
void write_pages(std::ostream &out, const std::vector<PageDecl> &pages);
void write_page_map(std::ostream &out, const std::vector<BlockDecl> &blocks);
void write_ppf(std::ostream &out, const PpfAssignment &ppf);
void write_expert(std::ostream &out, const ExpertDecl &expert);

/// One record per object (record_id = object id) and one raw link per edge,
/// so reading both back and rebuilding reproduces the graph's structure.
std::vector<ObjectRecord> graph_records(const ObjectGraph &graph);
std::vector<RawLink> graph_links(const ObjectGraph &graph);

} // namespace poprank

#endif // POPRANK_FORMATS_HPP_
