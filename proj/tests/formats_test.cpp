#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "poprank/error.hpp"
#include "poprank/formats.hpp"
#include "poprank/reports.hpp"
#include "test_support.hpp"

using namespace poprank;

TEST_CASE("schemas") {
    std::istringstream in("# comment\npaper\ttitle,year,venue\ttitle\n\nauthor\tname,affil\tname\n");
    const auto reg = read_schemas(in, "schemas.tsv");
    REQUIRE(reg.size() == 2);
    CHECK(reg.at("paper").attributes == std::vector<std::string>{"title", "year", "venue"});
    CHECK(reg.at("author").key_attributes == std::vector<std::string>{"name"});

    std::istringstream empty_key("paper\ttitle\t\n");
    CHECK_THROWS_AS(read_schemas(empty_key, "s"), ParseError);
}

TEST_CASE("objects") {
    std::istringstream in("r1\tpaper\ttitle=X;year=2004\tpage7\nr2\tpaper\ttitle=Y;note=a=b\n");
    const auto recs = read_objects(in, "objects.tsv");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].attribute_values.at("year") == "2004");
    CHECK(recs[0].source_page == "page7");
    CHECK_FALSE(recs[1].source_page);
    CHECK(recs[1].attribute_values.at("note") == "a=b");

    std::istringstream dup("r1\tpaper\ttitle=X;title=Y\n");
    CHECK_THROWS_AS(read_objects(dup, "o"), ParseError);
    std::istringstream no_eq("r1\tpaper\ttitle\n");
    CHECK_THROWS_AS(read_objects(no_eq, "o"), ParseError);
}

TEST_CASE("links report the file and line of malformed rows") {
    std::istringstream in("paper\tA\tcites\tpaper\tB\npaper\tA\tcites\n");
    try {
        read_links(in, "links.tsv");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.file() == "links.tsv");
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("links.tsv:2") == 0);
    }
}

TEST_CASE("links split composite keys") {
    std::istringstream in("author\tSmith|John\twrote\tpaper\tX\n");
    const auto links = read_links(in, "l");
    CHECK(links[0].source_key == KeyTuple{"Smith", "John"});
}

TEST_CASE("pages and page map") {
    std::istringstream pages_in("a\tb,c\nb\na\nc\t\n");
    const auto pages = read_pages(pages_in, "pages.tsv");
    REQUIRE(pages.size() == 4);
    CHECK(pages[0].out_links == std::vector<std::string>{"b", "c"});
    CHECK(pages[1].out_links.empty());
    CHECK(pages[3].out_links.empty());

    std::istringstream map_in("a\tpaper\tX\t0.75\na\tpaper\tY\nb\tpaper\tZ\t\n");
    const auto blocks = read_page_map(map_in, "map.tsv");
    CHECK(blocks[0].block_weight == 0.75);
    CHECK_FALSE(blocks[1].block_weight);
    CHECK_FALSE(blocks[2].block_weight);

    std::istringstream bad("a\tpaper\tX\t-1\n");
    CHECK_THROWS_AS(read_page_map(bad, "m"), ParseError);
    std::istringstream junk("a\tpaper\tX\theavy\n");
    CHECK_THROWS_AS(read_page_map(junk, "m"), ParseError);
}

TEST_CASE("ppf files") {
    std::istringstream in("cites\t0.8\nauthored_by\t0.2\n");
    const auto ppf = read_ppf(in, "ppf.tsv");
    CHECK(ppf.at("cites") == 0.8);
    CHECK(ppf.at("authored_by") == 0.2);
    std::istringstream twice("cites\t0.8\ncites\t0.2\n");
    CHECK_THROWS_AS(read_ppf(twice, "p"), ParseError);
    std::istringstream negative("cites\t-0.5\n");
    CHECK_THROWS_AS(read_ppf(negative, "p"), ParseError);
}

TEST_CASE("expert rankings mix ordered lines and pairs") {
    std::istringstream in("paper:X\npaper:Y\nauthor:Smith|John\t>\tauthor:Doe|Jane\n");
    const auto e = read_expert(in, "expert.tsv");
    REQUIRE(e.order.size() == 2);
    CHECK(e.order[1] == ObjectRef{"paper", {"Y"}});
    REQUIRE(e.pairs.size() == 1);
    CHECK(e.pairs[0].second == ObjectRef{"author", {"Doe", "Jane"}});

    std::istringstream bad("paper:X\t<\tpaper:Y\n");
    CHECK_THROWS_AS(read_expert(bad, "e"), ParseError);
    std::istringstream no_type("X\n");
    CHECK_THROWS_AS(read_expert(no_type, "e"), ParseError);
}

TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        std::istringstream in("r\t" + format_double(x) + "\n");
        if (x < 0)
            continue;
        CHECK(read_ppf(in, "p").at("r") == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1e-10) == "1e-10");
}

TEST_CASE("reports parse back losslessly") {
    std::mt19937_64 rng(71);
    const auto g = testing::random_graph(rng, 25, 2, 0.1);
    const auto scores = testing::random_distribution(rng, 25);
    const auto report = make_rank_report(g, scores, {{"epsilon", "0.15"}, {"gamma.r0", "0.8"}});

    CHECK(report.ranking.front().rank == 1);
    for (std::size_t i = 1; i < report.ranking.size(); ++i)
        CHECK(report.ranking[i - 1].score >= report.ranking[i].score);

    std::ostringstream out;
    write_report(out, to_table(report));
    std::istringstream in(out.str());
    const auto table = read_report(in, "report.tsv");
    CHECK(table.meta("epsilon") == "0.15");
    CHECK(rank_report_from_table(table) == report);

    std::ostringstream again;
    write_report(again, table);
    CHECK(again.str() == out.str());
}

TEST_CASE("rank report ties break by object id") {
    const auto g = testing::graph_from_edges(3, {});
    const auto report = make_rank_report(g, {0.25, 0.5, 0.25}, {});
    CHECK(report.ranking[0].object_id == 1);
    CHECK(report.ranking[1].object_id == 0);
    CHECK(report.ranking[2].object_id == 2);
}

TEST_CASE("malformed reports are rejected") {
    std::istringstream no_banner("rank\tobject_id\n");
    CHECK_THROWS_AS(read_report(no_banner, "r"), ParseError);
    std::istringstream short_row("# poprank rank\na\tb\n1\n");
    CHECK_THROWS_AS(read_report(short_row, "r"), ParseError);
}

TEST_CASE("kendall tau") {
    CHECK(kendall_tau({1, 2, 3}, {1, 2, 3}) == 1.0);
    CHECK(kendall_tau({1, 2, 3}, {3, 2, 1}) == -1.0);
    CHECK(kendall_tau({1}, {1}) == 1.0);

    std::mt19937_64 rng(73);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 2 + rng() % 40;
        std::vector<std::size_t> a(n), b(n);
        std::iota(a.begin(), a.end(), std::size_t{1});
        std::iota(b.begin(), b.end(), std::size_t{1});
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        long concordant = 0, discordant = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const bool same = (a[i] < a[j]) == (b[i] < b[j]);
                same ? ++concordant : ++discordant;
            }
        const double expected = static_cast<double>(concordant - discordant) /
                                static_cast<double>(concordant + discordant);
        CHECK(kendall_tau(a, b) == doctest::Approx(expected).epsilon(1e-12));
    }
}
