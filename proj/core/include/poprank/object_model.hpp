#ifndef POPRANK_OBJECT_MODEL_HPP_
#define POPRANK_OBJECT_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace poprank {

using ObjectId = std::uint32_t;

/// Values of an object's key attributes, in schema key order.
using KeyTuple = std::vector<std::string>;

/// Joins a key tuple with '|', the separator used by the text formats.
std::string join_key(const KeyTuple &key);
KeyTuple split_key(std::string_view joined);

/**
 * Relational schema shared by every object of one type. The key attributes
 * are the subset of attributes whose values identify an object.
 */
struct ObjectTypeSchema {
    std::string type_name;
    std::vector<std::string> attributes;
    std::vector<std::string> key_attributes;
};

class SchemaRegistry {
public:
    /// Throws InputError on an empty type name, empty or non-subset key set,
    /// repeated attribute names, or a type that is already registered.
    void register_schema(ObjectTypeSchema schema);

    const ObjectTypeSchema *find(std::string_view type_name) const;
    const ObjectTypeSchema &at(std::string_view type_name) const;
    bool contains(std::string_view type_name) const { return find(type_name) != nullptr; }

    /// Schemas in registration order.
    const std::vector<ObjectTypeSchema> &schemas() const noexcept { return schemas_; }
    std::size_t size() const noexcept { return schemas_.size(); }

private:
    std::vector<ObjectTypeSchema> schemas_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// One extracted copy of an object's information, as found in a single source.
struct ObjectRecord {
    std::string record_id;
    std::string type_name;
    std::map<std::string, std::string> attribute_values;
    std::optional<std::string> source_page;
};

/// A deduplicated object aggregating every record that shares its key.
struct WebObject {
    ObjectId object_id = 0;
    std::string type_name;
    KeyTuple key;
    std::map<std::string, std::string> attribute_values;
    std::size_t merged_record_count = 1;
    std::size_t conflict_count = 0;

    friend bool operator==(const WebObject &, const WebObject &) = default;
};

/// Extracts the key tuple of `values` under `schema`. Throws InputError when a
/// key attribute is absent or empty.
KeyTuple extract_key(const ObjectTypeSchema &schema,
                     const std::map<std::string, std::string> &values,
                     std::string_view context = {});

/**
 * Collapses records sharing (type, key tuple) into WebObjects.
 *
 * Object ids are dense and follow first appearance. A non-key attribute seen
 * with a different value than the one already held keeps the first value and
 * bumps conflict_count. Throws InputError for unregistered types, attributes
 * outside the schema, or missing key values.
 */
std::vector<WebObject> merge_records(std::span<const ObjectRecord> records,
                                     const SchemaRegistry &schemas);

struct RelationshipType {
    std::string rel_name;
    std::string source_type;
    std::string target_type;

    friend bool operator==(const RelationshipType &, const RelationshipType &) = default;
};

struct Edge {
    ObjectId source = 0;
    ObjectId target = 0;

    friend auto operator<=>(const Edge &, const Edge &) = default;
};

/// A link as it appears in the input, with endpoints named by type and key.
struct RawLink {
    std::string source_type;
    KeyTuple source_key;
    std::string rel_name;
    std::string target_type;
    KeyTuple target_key;
};

/**
 * Objects plus heterogeneous directed links, grouped by relationship type.
 * links()[r] holds the edges of relationship_types()[r] in insertion order.
 * Immutable once built.
 */
class ObjectGraph {
public:
    ObjectGraph() = default;
    ObjectGraph(std::vector<WebObject> objects, std::vector<RelationshipType> rel_types,
                std::vector<std::vector<Edge>> links);

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t edge_count() const noexcept;

    const std::vector<WebObject> &objects() const noexcept { return objects_; }
    const WebObject &object(ObjectId id) const { return objects_.at(id); }
    const std::vector<RelationshipType> &relationship_types() const noexcept { return rel_types_; }
    const std::vector<std::vector<Edge>> &links() const noexcept { return links_; }

    std::optional<std::size_t> relationship_index(std::string_view rel_name) const;
    std::optional<ObjectId> find(std::string_view type_name, const KeyTuple &key) const;

    /// One-pass structural check; returns a description of the first
    /// violation, or nullopt when the graph is well formed.
    std::optional<std::string> check_well_formed() const;

    friend bool operator==(const ObjectGraph &a, const ObjectGraph &b) {
        return a.objects_ == b.objects_ && a.rel_types_ == b.rel_types_ && a.links_ == b.links_;
    }

private:
    std::vector<WebObject> objects_;
    std::vector<RelationshipType> rel_types_;
    std::vector<std::vector<Edge>> links_;
    std::unordered_map<std::string, ObjectId> key_index_;
};

struct BuildOptions {
    /// Unresolvable endpoints become errors instead of diagnostics.
    bool strict = false;
};

struct BuildResult {
    ObjectGraph graph;
    std::vector<std::string> unresolved;  // one diagnostic per rejected link
    std::size_t duplicates_dropped = 0;
};

/**
 * Resolves raw links against `objects` and assembles the graph.
 *
 * Throws InputError for repeated relationship names, links naming an unknown
 * relationship, endpoint types that disagree with the relationship, and (in
 * strict mode) unresolvable endpoints. Duplicate triples are dropped and
 * counted.
 */
BuildResult build_graph(std::vector<WebObject> objects, std::vector<RelationshipType> rel_types,
                        std::span<const RawLink> raw_links, BuildOptions options = {});

} // namespace poprank

#endif // POPRANK_OBJECT_MODEL_HPP_
