#include "test_support.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Dense>

#include "poprank/poprank.hpp"

namespace poprank::testing {

std::vector<WebObject> make_nodes(std::size_t n) {
    std::vector<WebObject> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i].object_id = static_cast<ObjectId>(i);
        nodes[i].type_name = "node";
        nodes[i].key = {"n" + std::to_string(i)};
        nodes[i].attribute_values = {{"name", nodes[i].key[0]}};
    }
    return nodes;
}

ObjectGraph graph_from_edges(std::size_t n, const std::vector<std::vector<Edge>> &edges_by_type) {
    std::vector<RelationshipType> types;
    for (std::size_t t = 0; t < edges_by_type.size(); ++t)
        types.push_back({"r" + std::to_string(t), "node", "node"});
    return ObjectGraph(make_nodes(n), std::move(types), edges_by_type);
}

ObjectGraph random_graph(std::mt19937_64 &rng, std::size_t n, std::size_t types, double density) {
    std::bernoulli_distribution coin(density);
    std::vector<std::vector<Edge>> edges(types);
    for (std::size_t t = 0; t < types; ++t)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (coin(rng))
                    edges[t].push_back({static_cast<ObjectId>(a), static_cast<ObjectId>(b)});
    return graph_from_edges(n, edges);
}

std::vector<double> random_distribution(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> v(n);
    double sum = 0.0;
    for (auto &x : v)
        sum += x = u(rng);
    for (auto &x : v)
        x /= sum;
    return v;
}

std::vector<double> uniform(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

PpfAssignment random_ppf(std::mt19937_64 &rng, const ObjectGraph &graph) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> gamma(graph.relationship_types().size());
    for (auto &g : gamma)
        g = u(rng);
    if (!gamma.empty() && std::all_of(gamma.begin(), gamma.end(), [](double g) { return g == 0.0; }))
        gamma[0] = 0.5;
    return ppf_for(graph, gamma);
}

PpfAssignment ppf_for(const ObjectGraph &graph, const std::vector<double> &gamma) {
    PpfAssignment ppf;
    for (std::size_t t = 0; t < gamma.size(); ++t)
        ppf.set(graph.relationship_types()[t].rel_name, gamma[t]);
    return ppf;
}

std::vector<double> dense_pagerank(std::size_t n,
                                   const std::vector<std::pair<std::size_t, std::size_t>> &links,
                                   double damping) {
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto &[a, b] : links)
        adj(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 1.0;  // duplicates collapse
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(adj.rows(), adj.cols());
    const double u = 1.0 / static_cast<double>(n);
    for (Eigen::Index i = 0; i < adj.rows(); ++i) {
        const double deg = adj.row(i).sum();
        for (Eigen::Index j = 0; j < adj.cols(); ++j)
            op(j, i) = deg > 0 ? adj(i, j) / deg : u;
    }
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(adj.rows(), adj.cols()) - damping * op;
    const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(adj.rows(), (1.0 - damping) * u);
    const Eigen::VectorXd x = a.fullPivLu().solve(rhs);
    std::vector<double> out(x.data(), x.data() + x.size());
    const double sum = std::accumulate(out.begin(), out.end(), 0.0);
    for (auto &v : out)
        v /= sum;
    return out;
}

std::vector<double> dense_poprank(const ObjectGraph &graph, const std::vector<double> &gamma,
                                  const std::vector<double> &prior, double epsilon) {
    const auto n = static_cast<Eigen::Index>(graph.object_count());
    const std::size_t types = graph.relationship_types().size();

    // m(o, t) = probability of stepping from o to t
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd dangling = Eigen::VectorXd::Ones(n);
    for (Eigen::Index o = 0; o < n; ++o) {
        std::vector<std::vector<ObjectId>> targets(types);
        for (std::size_t t = 0; t < types; ++t)
            for (const auto &e : graph.links()[t])
                if (static_cast<Eigen::Index>(e.source) == o)
                    targets[t].push_back(e.target);
        double active = 0.0;
        for (std::size_t t = 0; t < types; ++t)
            if (gamma[t] > 0 && !targets[t].empty())
                active += gamma[t];
        if (active == 0.0)
            continue;
        dangling(o) = 0.0;
        for (std::size_t t = 0; t < types; ++t) {
            if (gamma[t] <= 0 || targets[t].empty())
                continue;
            for (auto target : targets[t])
                m(o, target) += gamma[t] / active / static_cast<double>(targets[t].size());
        }
    }
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i)
        w(i) = prior[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) -
                              (1.0 - epsilon) * (m.transpose() + w * dangling.transpose());
    const Eigen::VectorXd r = a.fullPivLu().solve(epsilon * w);
    std::vector<double> out(r.data(), r.data() + r.size());
    const double sum = std::accumulate(out.begin(), out.end(), 0.0);
    for (auto &v : out)
        v /= sum;
    return out;
}

std::map<std::pair<std::string, KeyTuple>, std::size_t> group_by_key(
    const std::vector<ObjectRecord> &records, const SchemaRegistry &schemas) {
    std::map<std::pair<std::string, KeyTuple>, std::size_t> groups;
    for (const auto &r : records) {
        KeyTuple key;
        for (const auto &k : schemas.at(r.type_name).key_attributes)
            key.push_back(r.attribute_values.at(k));
        ++groups[{r.type_name, key}];
    }
    return groups;
}

SchemaRegistry paper_schema() {
    SchemaRegistry s;
    s.register_schema({"paper", {"title", "year", "venue"}, {"title"}});
    return s;
}

std::vector<ObjectRecord> dedup_records(std::mt19937_64 &rng, std::size_t records,
                                        std::size_t distinct) {
    std::vector<std::size_t> title_of(records);
    for (std::size_t i = 0; i < records; ++i)
        title_of[i] = i < distinct ? i : std::uniform_int_distribution<std::size_t>(0, distinct - 1)(rng);
    std::shuffle(title_of.begin(), title_of.end(), rng);
    std::uniform_int_distribution<int> year(2000, 2005);
    std::vector<ObjectRecord> out;
    for (std::size_t i = 0; i < records; ++i)
        out.push_back({"rec" + std::to_string(i),
                       "paper",
                       {{"title", "T" + std::to_string(title_of[i])},
                        {"year", std::to_string(year(rng))}},
                       std::nullopt});
    return out;
}

PlantedCorpus planted_corpus(std::uint64_t seed, std::pair<double, double> gamma, std::size_t objects) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution cites(0.12), extends(0.08);
    std::vector<std::vector<Edge>> edges(2);
    for (std::size_t a = 0; a < objects; ++a)
        for (std::size_t b = 0; b < objects; ++b) {
            if (a == b)
                continue;
            if (cites(rng))
                edges[0].push_back({static_cast<ObjectId>(a), static_cast<ObjectId>(b)});
            if (extends(rng))
                edges[1].push_back({static_cast<ObjectId>(a), static_cast<ObjectId>(b)});
        }
    auto nodes = make_nodes(objects);
    for (auto &n : nodes)
        n.type_name = "paper";
    PlantedCorpus c{ObjectGraph(std::move(nodes),
                                {{"cites", "paper", "paper"}, {"extends", "paper", "paper"}},
                                std::move(edges)),
                    random_distribution(rng, objects),
                    {}};
    PpfAssignment ppf{{"cites", gamma.first}, {"extends", gamma.second}};
    const auto scores = compute_poprank(c.graph, ppf, c.prior).scores;
    c.order.resize(objects);
    std::iota(c.order.begin(), c.order.end(), ObjectId{0});
    std::stable_sort(c.order.begin(), c.order.end(),
                     [&](ObjectId a, ObjectId b) { return scores[a] > scores[b]; });
    return c;
}

CorpusPaths CorpusFiles::write(const std::filesystem::path &dir) const {
    std::filesystem::create_directories(dir);
    const auto paths = CorpusPaths::in_directory(dir.string());
    write_corpus(paths, schemas, records, links, pages, blocks);
    return paths;
}

CorpusFiles paper_corpus(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>> &page_links,
                         const std::vector<std::tuple<std::string, std::size_t, std::size_t>> &object_links) {
    CorpusFiles c;
    c.schemas = paper_schema();
    for (std::size_t i = 0; i < n; ++i)
        c.records.push_back({"r" + std::to_string(i),
                             "paper",
                             {{"title", "p" + std::to_string(i)}, {"year", std::to_string(2000 + i)}},
                             "w" + std::to_string(i)});
    for (std::size_t i = 0; i < n; ++i) {
        PageDecl page{"w" + std::to_string(i), {}};
        for (const auto &[a, b] : page_links)
            if (a == i)
                page.out_links.push_back("w" + std::to_string(b));
        c.pages.push_back(std::move(page));
        c.blocks.push_back({"w" + std::to_string(i), "paper", {"p" + std::to_string(i)}, std::nullopt});
    }
    for (const auto &[rel, a, b] : object_links)
        c.links.push_back({"paper", {"p" + std::to_string(a)}, rel, "paper", {"p" + std::to_string(b)}});
    return c;
}

CorpusFiles corpus_from_graph(const ObjectGraph &graph, const std::vector<double> &prior) {
    CorpusFiles c;
    std::vector<std::string> types;
    for (const auto &obj : graph.objects())
        if (std::find(types.begin(), types.end(), obj.type_name) == types.end())
            types.push_back(obj.type_name);
    for (const auto &t : types)
        c.schemas.register_schema({t, {"name"}, {"name"}});
    c.records = graph_records(graph);
    c.links = graph_links(graph);
    c.pages.push_back({"w", {}});
    for (const auto &obj : graph.objects())
        c.blocks.push_back({"w", obj.type_name, obj.key, prior[obj.object_id]});
    return c;
}

std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("poprank_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace poprank::testing
