#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "poprank/error.hpp"
#include "poprank/object_model.hpp"
#include "test_support.hpp"

using namespace poprank;

namespace {

ObjectRecord paper(std::string id, std::string title, std::string year) {
    return {std::move(id), "paper", {{"title", std::move(title)}, {"year", std::move(year)}}, {}};
}

std::map<std::pair<std::string, KeyTuple>, std::size_t> counts_of(const std::vector<WebObject> &objs) {
    std::map<std::pair<std::string, KeyTuple>, std::size_t> out;
    for (const auto &o : objs)
        out[{o.type_name, o.key}] = o.merged_record_count;
    return out;
}

} // namespace

TEST_CASE("register_schema accepts well-formed schemas") {
    SchemaRegistry reg;
    reg.register_schema({"paper", {"title", "year", "venue"}, {"title"}});
    REQUIRE(reg.contains("paper"));
    CHECK(reg.at("paper").key_attributes == std::vector<std::string>{"title"});
    CHECK(reg.find("author") == nullptr);
}

TEST_CASE("register_schema rejects invalid schemas") {
    SchemaRegistry reg;
    CHECK_THROWS_AS(reg.register_schema({"paper", {"title", "year"}, {}}), InputError);
    CHECK_THROWS_AS(reg.register_schema({"paper", {"title", "title"}, {"title"}}), InputError);
    CHECK_THROWS_AS(reg.register_schema({"paper", {"title"}, {"venue"}}), InputError);
    reg.register_schema({"paper", {"title", "year"}, {"title"}});
    CHECK_THROWS_WITH_AS(reg.register_schema({"paper", {"title"}, {"title"}}),
                         doctest::Contains("duplicate"), InputError);
}

TEST_CASE("merge_records keeps the first value on conflict") {
    const auto reg = testing::paper_schema();
    const std::vector<ObjectRecord> recs{paper("a", "X", "2004"), paper("b", "X", "2005")};
    const auto objs = merge_records(recs, reg);
    REQUIRE(objs.size() == 1);
    CHECK(objs[0].merged_record_count == 2);
    CHECK(objs[0].conflict_count == 1);
    CHECK(objs[0].attribute_values.at("year") == "2004");
}

TEST_CASE("merge_records keeps distinct keys apart and numbers by first appearance") {
    const auto reg = testing::paper_schema();
    const std::vector<ObjectRecord> recs{paper("a", "X", "1"), paper("b", "Y", "1"),
                                         paper("c", "Z", "1"), paper("d", "Y", "1")};
    const auto objs = merge_records(recs, reg);
    REQUIRE(objs.size() == 3);
    CHECK(objs[0].key == KeyTuple{"X"});
    CHECK(objs[1].key == KeyTuple{"Y"});
    CHECK(objs[1].merged_record_count == 2);
    CHECK(objs[1].conflict_count == 0);
    CHECK(objs[2].object_id == 2);
}

TEST_CASE("merge_records fills attributes missing from the first copy without a conflict") {
    const auto reg = testing::paper_schema();
    std::vector<ObjectRecord> recs{paper("a", "X", "2004"), paper("b", "X", "2004")};
    recs[1].attribute_values["venue"] = "WWW";
    const auto objs = merge_records(recs, reg);
    CHECK(objs[0].attribute_values.at("venue") == "WWW");
    CHECK(objs[0].conflict_count == 0);
}

TEST_CASE("merge_records errors") {
    const auto reg = testing::paper_schema();
    SUBCASE("unregistered type") {
        std::vector<ObjectRecord> recs{{"a", "author", {{"name", "N"}}, {}}};
        CHECK_THROWS_AS(merge_records(recs, reg), InputError);
    }
    SUBCASE("missing key value") {
        std::vector<ObjectRecord> recs{{"a", "paper", {{"year", "2001"}}, {}}};
        CHECK_THROWS_WITH_AS(merge_records(recs, reg), doctest::Contains("title"), InputError);
    }
    SUBCASE("empty key value") {
        std::vector<ObjectRecord> recs{paper("a", "", "2001")};
        CHECK_THROWS_AS(merge_records(recs, reg), InputError);
    }
    SUBCASE("attribute outside the schema") {
        std::vector<ObjectRecord> recs{{"a", "paper", {{"title", "X"}, {"pages", "10"}}, {}}};
        CHECK_THROWS_AS(merge_records(recs, reg), InputError);
    }
}

TEST_CASE("merge_records collapses 100 records onto 40 keys like plain grouping") {
    const auto reg = testing::paper_schema();
    std::mt19937_64 rng(7);
    auto recs = testing::dedup_records(rng, 100, 40);
    const auto expected = testing::group_by_key(recs, reg);
    REQUIRE(expected.size() == 40);

    const auto objs = merge_records(recs, reg);
    CHECK(objs.size() == 40);
    CHECK(counts_of(objs) == expected);

    std::size_t total = 0;
    for (const auto &o : objs)
        total += o.merged_record_count;
    CHECK(total == 100);

    SUBCASE("permutation changes neither keys nor counts") {
        for (int round = 0; round < 5; ++round) {
            std::shuffle(recs.begin(), recs.end(), rng);
            CHECK(counts_of(merge_records(recs, reg)) == expected);
        }
    }
    SUBCASE("re-merging the merged objects is idempotent") {
        std::vector<ObjectRecord> again;
        for (const auto &o : objs)
            again.push_back({std::to_string(o.object_id), o.type_name, o.attribute_values, {}});
        const auto remerged = merge_records(again, reg);
        REQUIRE(remerged.size() == objs.size());
        for (std::size_t i = 0; i < objs.size(); ++i) {
            CHECK(remerged[i].key == objs[i].key);
            CHECK(remerged[i].attribute_values == objs[i].attribute_values);
            CHECK(remerged[i].merged_record_count == 1);
        }
    }
}

TEST_CASE("key tuples join with '|'") {
    CHECK(join_key({"a", "b", "c"}) == "a|b|c");
    CHECK(split_key("a|b|c") == KeyTuple{"a", "b", "c"});
    CHECK(split_key("solo") == KeyTuple{"solo"});
}

TEST_CASE("build_graph") {
    SchemaRegistry reg = testing::paper_schema();
    reg.register_schema({"author", {"name"}, {"name"}});
    const std::vector<ObjectRecord> recs{paper("1", "A", "2001"), paper("2", "B", "2002"),
                                         {"3", "author", {{"name", "Ann"}}, {}}};
    const std::vector<RelationshipType> rels{{"cites", "paper", "paper"},
                                             {"authored_by", "paper", "author"}};

    SUBCASE("single link") {
        const std::vector<RawLink> links{{"paper", {"A"}, "cites", "paper", {"B"}}};
        const auto res = build_graph(merge_records(recs, reg), rels, links);
        CHECK(res.graph.edge_count() == 1);
        CHECK(res.graph.links()[0][0] == Edge{0, 1});
        CHECK_FALSE(res.graph.check_well_formed());
    }
    SUBCASE("endpoint type mismatch is always an error") {
        const std::vector<RawLink> links{{"author", {"Ann"}, "cites", "paper", {"B"}}};
        CHECK_THROWS_WITH_AS(build_graph(merge_records(recs, reg), rels, links),
                             doctest::Contains("does not match"), InputError);
    }
    SUBCASE("unknown endpoints are collected unless strict") {
        const std::vector<RawLink> links{{"paper", {"A"}, "cites", "paper", {"Z"}},
                                         {"paper", {"A"}, "cites", "paper", {"B"}}};
        const auto res = build_graph(merge_records(recs, reg), rels, links);
        CHECK(res.unresolved.size() == 1);
        CHECK(res.graph.edge_count() == 1);
        CHECK_THROWS_AS(build_graph(merge_records(recs, reg), rels, links, {.strict = true}),
                        InputError);
    }
    SUBCASE("unknown relationship and repeated relationship names") {
        const std::vector<RawLink> links{{"paper", {"A"}, "reviews", "paper", {"B"}}};
        CHECK_THROWS_AS(build_graph(merge_records(recs, reg), rels, links), InputError);
        auto twice = rels;
        twice.push_back(rels[0]);
        CHECK_THROWS_AS(build_graph(merge_records(recs, reg), twice, {}), InputError);
    }
}

TEST_CASE("build_graph drops exact duplicate triples like a set would") {
    std::mt19937_64 rng(11);
    std::vector<RawLink> links;
    std::set<std::tuple<std::string, std::string, std::string>> distinct;
    // 8 distinct links over 5 nodes plus 2 repeats
    while (distinct.size() < 8) {
        const auto a = "n" + std::to_string(rng() % 5), b = "n" + std::to_string(rng() % 5);
        const std::string rel = rng() % 2 ? "r0" : "r1";
        if (distinct.insert({a, rel, b}).second)
            links.push_back({"node", {a}, rel, "node", {b}});
    }
    links.push_back(links[2]);
    links.push_back(links[5]);
    std::shuffle(links.begin(), links.end(), rng);

    const auto res = build_graph(testing::make_nodes(5),
                                 {{"r0", "node", "node"}, {"r1", "node", "node"}}, links);
    CHECK(res.graph.edge_count() == distinct.size());
    CHECK(res.duplicates_dropped == 2);
    CHECK_FALSE(res.graph.check_well_formed());
}

TEST_CASE("check_well_formed flags broken graphs") {
    auto nodes = testing::make_nodes(2);
    ObjectGraph bad_endpoint(nodes, {{"r0", "node", "node"}}, {{{0, 5}}});
    CHECK(bad_endpoint.check_well_formed());
    ObjectGraph dup(nodes, {{"r0", "node", "node"}}, {{{0, 1}, {0, 1}}});
    CHECK(dup.check_well_formed());
    ObjectGraph wrong_type(nodes, {{"r0", "paper", "node"}}, {{{0, 1}}});
    CHECK(wrong_type.check_well_formed());
}
