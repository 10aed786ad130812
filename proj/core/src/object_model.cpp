#include "poprank/object_model.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "poprank/error.hpp"

namespace poprank {

namespace {

// Index key for (type, key tuple); \x1f cannot appear in the text formats.
std::string index_key(std::string_view type_name, const KeyTuple &key) {
    std::string out(type_name);
    for (const auto &part : key) {
        out.push_back('\x1f');
        out += part;
    }
    return out;
}

std::string describe(std::string_view type_name, const KeyTuple &key) {
    return std::string(type_name) + ":" + join_key(key);
}

} // namespace

std::string join_key(const KeyTuple &key) {
    std::string out;
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i != 0)
            out.push_back('|');
        out += key[i];
    }
    return out;
}

KeyTuple split_key(std::string_view joined) {
    KeyTuple out;
    std::size_t start = 0;
    while (true) {
        const auto pos = joined.find('|', start);
        out.emplace_back(joined.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

void SchemaRegistry::register_schema(ObjectTypeSchema schema) {
    if (schema.type_name.empty())
        throw InputError("schema has an empty type name");
    if (index_.contains(schema.type_name))
        throw InputError("duplicate schema for type '" + schema.type_name + "'");
    if (schema.key_attributes.empty())
        throw InputError("schema '" + schema.type_name + "' has an empty key attribute set");

    std::unordered_set<std::string_view> attrs;
    for (const auto &a : schema.attributes) {
        if (a.empty())
            throw InputError("schema '" + schema.type_name + "' has an empty attribute name");
        if (!attrs.insert(a).second)
            throw InputError("schema '" + schema.type_name + "' repeats attribute '" + a + "'");
    }
    std::unordered_set<std::string_view> keys;
    for (const auto &k : schema.key_attributes) {
        if (!attrs.contains(k))
            throw InputError("schema '" + schema.type_name + "': key attribute '" + k +
                             "' is not an attribute");
        if (!keys.insert(k).second)
            throw InputError("schema '" + schema.type_name + "' repeats key attribute '" + k + "'");
    }

    index_.emplace(schema.type_name, schemas_.size());
    schemas_.push_back(std::move(schema));
}

const ObjectTypeSchema *SchemaRegistry::find(std::string_view type_name) const {
    const auto it = index_.find(std::string(type_name));
    return it == index_.end() ? nullptr : &schemas_[it->second];
}

const ObjectTypeSchema &SchemaRegistry::at(std::string_view type_name) const {
    if (const auto *s = find(type_name))
        return *s;
    throw InputError("unregistered object type '" + std::string(type_name) + "'");
}

KeyTuple extract_key(const ObjectTypeSchema &schema,
                     const std::map<std::string, std::string> &values,
                     std::string_view context) {
    KeyTuple key;
    key.reserve(schema.key_attributes.size());
    for (const auto &k : schema.key_attributes) {
        const auto it = values.find(k);
        if (it == values.end() || it->second.empty()) {
            std::string msg = "missing value for key attribute '" + k + "' of type '" +
                              schema.type_name + "'";
            if (!context.empty())
                msg += " (" + std::string(context) + ")";
            throw InputError(msg);
        }
        key.push_back(it->second);
    }
    return key;
}

std::vector<WebObject> merge_records(std::span<const ObjectRecord> records,
                                     const SchemaRegistry &schemas) {
    std::vector<WebObject> objects;
    std::unordered_map<std::string, ObjectId> by_key;

    for (const auto &rec : records) {
        const auto *schema = schemas.find(rec.type_name);
        if (schema == nullptr)
            throw InputError("record '" + rec.record_id + "' has unregistered type '" +
                             rec.type_name + "'");
        for (const auto &[attr, value] : rec.attribute_values) {
            if (std::find(schema->attributes.begin(), schema->attributes.end(), attr) ==
                schema->attributes.end())
                throw InputError("record '" + rec.record_id + "': attribute '" + attr +
                                 "' is not in schema '" + rec.type_name + "'");
        }
        KeyTuple key = extract_key(*schema, rec.attribute_values, "record '" + rec.record_id + "'");

        auto [it, inserted] = by_key.try_emplace(index_key(rec.type_name, key),
                                                 static_cast<ObjectId>(objects.size()));
        if (inserted) {
            WebObject obj;
            obj.object_id = it->second;
            obj.type_name = rec.type_name;
            obj.key = std::move(key);
            obj.attribute_values = rec.attribute_values;
            objects.push_back(std::move(obj));
            continue;
        }

        WebObject &obj = objects[it->second];
        ++obj.merged_record_count;
        for (const auto &[attr, value] : rec.attribute_values) {
            auto [held, fresh] = obj.attribute_values.try_emplace(attr, value);
            if (!fresh && held->second != value)
                ++obj.conflict_count;
        }
    }
    return objects;
}

ObjectGraph::ObjectGraph(std::vector<WebObject> objects, std::vector<RelationshipType> rel_types,
                         std::vector<std::vector<Edge>> links)
    : objects_(std::move(objects)), rel_types_(std::move(rel_types)), links_(std::move(links)) {
    links_.resize(rel_types_.size());
    key_index_.reserve(objects_.size());
    for (const auto &obj : objects_)
        key_index_.emplace(index_key(obj.type_name, obj.key), obj.object_id);
}

std::size_t ObjectGraph::edge_count() const noexcept {
    std::size_t n = 0;
    for (const auto &l : links_)
        n += l.size();
    return n;
}

std::optional<std::size_t> ObjectGraph::relationship_index(std::string_view rel_name) const {
    for (std::size_t r = 0; r < rel_types_.size(); ++r)
        if (rel_types_[r].rel_name == rel_name)
            return r;
    return std::nullopt;
}

std::optional<ObjectId> ObjectGraph::find(std::string_view type_name, const KeyTuple &key) const {
    const auto it = key_index_.find(index_key(type_name, key));
    if (it == key_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::string> ObjectGraph::check_well_formed() const {
    std::unordered_set<std::string> keys;
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        const auto &obj = objects_[i];
        if (obj.object_id != i)
            return "object at position " + std::to_string(i) + " has id " +
                   std::to_string(obj.object_id);
        if (obj.merged_record_count < 1)
            return "object " + std::to_string(i) + " has merged_record_count 0";
        if (!keys.insert(index_key(obj.type_name, obj.key)).second)
            return "duplicate key " + describe(obj.type_name, obj.key);
    }
    std::unordered_set<std::string_view> names;
    for (const auto &rt : rel_types_)
        if (!names.insert(rt.rel_name).second)
            return "duplicate relationship type '" + rt.rel_name + "'";
    if (links_.size() != rel_types_.size())
        return "link table size does not match relationship types";

    for (std::size_t r = 0; r < rel_types_.size(); ++r) {
        const auto &rt = rel_types_[r];
        std::set<Edge> seen;
        for (const auto &e : links_[r]) {
            if (e.source >= objects_.size() || e.target >= objects_.size())
                return "relationship '" + rt.rel_name + "' references a missing object";
            if (objects_[e.source].type_name != rt.source_type ||
                objects_[e.target].type_name != rt.target_type)
                return "relationship '" + rt.rel_name + "' has an endpoint of the wrong type";
            if (!seen.insert(e).second)
                return "relationship '" + rt.rel_name + "' has a duplicate edge";
        }
    }
    return std::nullopt;
}

BuildResult build_graph(std::vector<WebObject> objects, std::vector<RelationshipType> rel_types,
                        std::span<const RawLink> raw_links, BuildOptions options) {
    std::unordered_map<std::string_view, std::size_t> rel_index;
    for (std::size_t r = 0; r < rel_types.size(); ++r) {
        if (rel_types[r].rel_name.empty())
            throw InputError("relationship type with an empty name");
        if (!rel_index.emplace(rel_types[r].rel_name, r).second)
            throw InputError("duplicate relationship type '" + rel_types[r].rel_name + "'");
    }
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i].object_id != i)
            throw InputError("object ids must be dense and ordered");

    std::unordered_map<std::string, ObjectId> by_key;
    for (const auto &obj : objects)
        if (!by_key.emplace(index_key(obj.type_name, obj.key), obj.object_id).second)
            throw InputError("duplicate object " + describe(obj.type_name, obj.key));

    BuildResult result;
    std::vector<std::vector<Edge>> links(rel_types.size());
    std::vector<std::set<Edge>> seen(rel_types.size());

    for (const auto &link : raw_links) {
        const auto rit = rel_index.find(link.rel_name);
        if (rit == rel_index.end())
            throw InputError("link uses unknown relationship type '" + link.rel_name + "'");
        const auto &rt = rel_types[rit->second];
        if (link.source_type != rt.source_type || link.target_type != rt.target_type)
            throw InputError("link " + describe(link.source_type, link.source_key) + " -[" +
                             link.rel_name + "]-> " + describe(link.target_type, link.target_key) +
                             " does not match relationship type " + rt.source_type + " -> " +
                             rt.target_type);

        const auto src = by_key.find(index_key(link.source_type, link.source_key));
        const auto dst = by_key.find(index_key(link.target_type, link.target_key));
        if (src == by_key.end() || dst == by_key.end()) {
            const auto &missing = src == by_key.end()
                                      ? describe(link.source_type, link.source_key)
                                      : describe(link.target_type, link.target_key);
            std::string msg = "link via '" + link.rel_name + "' references unknown object " + missing;
            if (options.strict)
                throw InputError(msg);
            result.unresolved.push_back(std::move(msg));
            continue;
        }

        const Edge e{src->second, dst->second};
        if (!seen[rit->second].insert(e).second) {
            ++result.duplicates_dropped;
            continue;
        }
        links[rit->second].push_back(e);
    }

    result.graph = ObjectGraph(std::move(objects), std::move(rel_types), std::move(links));
    return result;
}

} // namespace poprank
