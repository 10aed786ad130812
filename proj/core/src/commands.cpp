#include "poprank/commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "poprank/error.hpp"
#include "poprank/formats.hpp"
#include "poprank/ppf_learning.hpp"
#include "poprank/reports.hpp"
#include "poprank/surfer_sim.hpp"

namespace poprank {

namespace {

using Metadata = std::vector<std::pair<std::string, std::string>>;

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const CommonOptions &options, std::ostream &out, const std::string &text) {
    if (options.out.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(options.out, std::ios::binary | std::ios::trunc);
    if (!file)
        throw InputError("cannot write '" + options.out + "'");
    file << text;
    if (!file)
        throw InputError("failed writing '" + options.out + "'");
}

std::string render(const TabularReport &report) {
    std::ostringstream s;
    write_report(s, report);
    return s.str();
}

PpfAssignment load_ppf(const std::string &path) {
    if (path.empty())
        throw InputError("a propagation factor file is required (--ppf)");
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    return read_ppf(in, path);
}

void check_converged(const CommonOptions &options, const RankResult &r, const char *what,
                     std::ostream &diag) {
    if (r.converged)
        return;
    diag << "level=warn event=nonconvergence stage=" << what << " iterations=" << r.iterations
         << " residual=" << format_double(r.residual) << '\n';
    if (options.fail_on_nonconverge)
        throw NonConvergence(std::string(what) + " did not converge within " +
                             std::to_string(r.iterations) + " iterations (residual " +
                             format_double(r.residual) + ")");
}

// Page scores and the object prior derived from them.
struct WebPrior {
    RankResult page_rank;
    PopularityVector prior;
};

WebPrior compute_prior(const CorpusBundle &bundle, const CommonOptions &options,
                       std::ostream &diag) {
    WebPrior w;
    if (bundle.pages.page_count() != 0) {
        w.page_rank = pagerank(bundle.pages, {options.damping, options.tol, options.max_iter});
        check_converged(options, w.page_rank, "pagerank", diag);
    } else {
        diag << "level=warn event=no_pages detail=\"uniform web popularity prior\"\n";
        w.page_rank.converged = true;
    }
    w.prior = web_popularity(bundle.graph, w.page_rank.scores, bundle.page_map);
    return w;
}

void check_ppf(const PpfAssignment &ppf, const ObjectGraph &graph, std::ostream &diag) {
    ppf.validate_for(graph);
    for (const auto &[name, gamma] : ppf.factors())
        if (!graph.relationship_index(name))
            diag << "level=warn event=unused_factor rel=" << name << '\n';
}

PopRankConfig poprank_config(const CommonOptions &options) {
    return {options.epsilon, options.tol, options.max_iter};
}

Metadata run_metadata(const CommonOptions &options, const CorpusBundle &bundle) {
    Metadata m{{"objects", std::to_string(bundle.graph.object_count())},
               {"links", std::to_string(bundle.graph.edge_count())},
               {"pages", std::to_string(bundle.page_ids.size())},
               {"epsilon", format_double(options.epsilon)},
               {"damping", format_double(options.damping)},
               {"tol", format_double(options.tol)},
               {"max_iter", std::to_string(options.max_iter)}};
    return m;
}

void add_ppf(Metadata &m, const PpfAssignment &ppf, const ObjectGraph &graph) {
    for (const auto &rt : graph.relationship_types())
        m.emplace_back("gamma." + rt.rel_name, format_double(ppf.at(rt.rel_name)));
}

void add_result(Metadata &m, const std::string &prefix, const RankResult &r) {
    m.emplace_back(prefix + "iterations", std::to_string(r.iterations));
    m.emplace_back(prefix + "residual", format_double(r.residual));
    m.emplace_back(prefix + "converged", r.converged ? "true" : "false");
}

void add_timestamp(Metadata &m, const CommonOptions &options) {
    if (!options.timestamp)
        return;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    m.emplace_back("timestamp", buf);
}

template <typename Body>
int guarded(std::ostream &diag, Body &&body) {
    try {
        body();
        return kExitOk;
    } catch (const NonConvergence &e) {
        diag << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const InputError &e) {
        diag << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

} // namespace

int cmd_ingest(const CommonOptions &options, std::ostream &out, std::ostream &diag) {
    return guarded(diag, [&] {
        const auto bundle = load_corpus(options.corpus, options.strict, diag);
        if (auto problem = bundle.graph.check_well_formed())
            throw InputError("object graph is malformed: " + *problem);
        const auto &s = bundle.stats;

        TabularReport report{"ingest",
                             {{"records", std::to_string(s.records)},
                              {"objects", std::to_string(s.objects)},
                              {"merged_records", std::to_string(s.merged_records)},
                              {"conflicts", std::to_string(s.conflicts)},
                              {"links", std::to_string(bundle.graph.edge_count())},
                              {"links_unresolved", std::to_string(s.links_unresolved)},
                              {"links_duplicate", std::to_string(s.links_duplicate)},
                              {"pages", std::to_string(bundle.page_ids.size())},
                              {"hyperlinks", std::to_string(bundle.pages.link_count())},
                              {"hyperlinks_unresolved", std::to_string(s.hyperlinks_unresolved)},
                              {"blocks", std::to_string(bundle.page_map.entries.size())},
                              {"blocks_unresolved", std::to_string(s.blocks_unresolved)}},
                             {"kind", "name", "detail", "count"},
                             {}};
        for (const auto &schema : bundle.schemas.schemas()) {
            std::size_t n = 0;
            for (const auto &obj : bundle.graph.objects())
                n += obj.type_name == schema.type_name;
            report.rows.push_back({"type", schema.type_name, "", std::to_string(n)});
        }
        for (std::size_t r = 0; r < bundle.graph.relationship_types().size(); ++r) {
            const auto &rt = bundle.graph.relationship_types()[r];
            report.rows.push_back({"relationship", rt.rel_name,
                                   rt.source_type + "->" + rt.target_type,
                                   std::to_string(bundle.graph.links()[r].size())});
        }
        emit(options, out, render(report));
    });
}

int cmd_rank(const CommonOptions &options, const std::string &ppf_path, std::ostream &out,
             std::ostream &diag) {
    return guarded(diag, [&] {
        const auto bundle = load_corpus(options.corpus, options.strict, diag);
        const auto ppf = load_ppf(ppf_path);
        check_ppf(ppf, bundle.graph, diag);
        const auto web = compute_prior(bundle, options, diag);
        const auto ranked = compute_poprank(bundle.graph, ppf, web.prior, poprank_config(options));
        check_converged(options, ranked, "poprank", diag);

        auto meta = run_metadata(options, bundle);
        add_ppf(meta, ppf, bundle.graph);
        add_result(meta, "pagerank_", web.page_rank);
        add_result(meta, "", ranked);
        add_timestamp(meta, options);
        emit(options, out, render(to_table(make_rank_report(bundle.graph, ranked.scores, meta))));
    });
}

int cmd_learn(const CommonOptions &options, const LearnOptions &learn, std::ostream &out,
              std::ostream &diag) {
    return guarded(diag, [&] {
        const auto bundle = load_corpus(options.corpus, options.strict, diag);
        if (learn.expert_path.empty())
            throw InputError("an expert ranking file is required (--expert)");
        std::ifstream in(learn.expert_path);
        if (!in)
            throw InputError("cannot open '" + learn.expert_path + "'");
        const auto decl = read_expert(in, learn.expert_path);
        if (decl.empty())
            throw InputError("expert ranking '" + learn.expert_path + "' is empty");
        const auto expert = resolve_expert(decl, bundle.graph);
        if (expert.empty())
            throw InputError("expert ranking '" + learn.expert_path + "' implies no pairs");

        if (bundle.graph.relationship_types().size() == 1)
            diag << "level=warn event=unidentifiable detail=\"single relationship type: every "
                    "factor value ranks identically\"\n";

        const auto web = compute_prior(bundle, options, diag);
        LearnConfig cfg;
        cfg.grid_resolution = learn.grid_resolution;
        cfg.refine_iters = learn.refine_iters;
        cfg.refine_step = learn.refine_step;
        cfg.rng_seed = options.seed;
        cfg.poprank_cfg = poprank_config(options);
        const auto result = learn_ppf(bundle.graph, web.prior, expert, cfg);

        diag << "level=info event=learn violations=" << result.disagreement.violations
             << " total=" << result.disagreement.total
             << " grid_violations=" << result.grid_violations
             << " evaluations=" << result.evaluations << '\n';

        std::ostringstream text;
        text << "# poprank learn\n";
        text << "# violations=" << result.disagreement.violations << '\n';
        text << "# total=" << result.disagreement.total << '\n';
        text << "# grid_violations=" << result.grid_violations << '\n';
        text << "# grid_candidates=" << result.grid_candidates << '\n';
        text << "# evaluations=" << result.evaluations << '\n';
        text << "# epsilon=" << format_double(options.epsilon) << '\n';
        text << "# seed=" << options.seed << '\n';
        Metadata stamp;
        add_timestamp(stamp, options);
        for (const auto &[k, v] : stamp)
            text << "# " << k << '=' << v << '\n';
        write_ppf(text, result.ppf);
        emit(options, out, text.str());
    });
}

int cmd_simulate(const CommonOptions &options, const SimulateOptions &sim, std::ostream &out,
                 std::ostream &diag) {
    return guarded(diag, [&] {
        const auto bundle = load_corpus(options.corpus, options.strict, diag);
        const auto ppf = load_ppf(sim.ppf_path);
        check_ppf(ppf, bundle.graph, diag);
        const auto web = compute_prior(bundle, options, diag);
        const auto transition = build_transition(bundle.graph, ppf);
        const auto analytic = compute_poprank(transition, web.prior, poprank_config(options));
        check_converged(options, analytic, "poprank", diag);

        SimConfig cfg;
        cfg.steps = sim.steps;
        cfg.rng_seed = options.seed;
        cfg.epsilon = options.epsilon;
        cfg.burn_in = sim.burn_in;
        cfg.walkers = sim.walkers;
        const auto hist = simulate(transition, web.prior, cfg);
        const auto empirical = hist.distribution();
        const double tv = total_variation(empirical, analytic.scores);

        auto meta = run_metadata(options, bundle);
        add_ppf(meta, ppf, bundle.graph);
        meta.emplace_back("steps", std::to_string(sim.steps));
        meta.emplace_back("burn_in", std::to_string(sim.burn_in));
        meta.emplace_back("walkers", std::to_string(sim.walkers));
        meta.emplace_back("seed", std::to_string(options.seed));
        add_result(meta, "", analytic);
        meta.emplace_back("tv_distance", format_double(tv));
        add_timestamp(meta, options);

        TabularReport report{"simulate", std::move(meta),
                             {"object_id", "type", "key", "visits", "empirical", "analytic"},
                             {}};
        for (const auto &obj : bundle.graph.objects())
            report.rows.push_back({std::to_string(obj.object_id), obj.type_name, join_key(obj.key),
                                   std::to_string(hist.counts[obj.object_id]),
                                   format_double(empirical[obj.object_id]),
                                   format_double(analytic.scores[obj.object_id])});
        emit(options, out, render(report));
    });
}

int cmd_compare(const CommonOptions &options, const std::string &ppf_path, std::ostream &out,
                std::ostream &diag) {
    return guarded(diag, [&] {
        const auto bundle = load_corpus(options.corpus, options.strict, diag);
        const auto ppf = load_ppf(ppf_path);
        check_ppf(ppf, bundle.graph, diag);
        const auto web = compute_prior(bundle, options, diag);
        const auto ranked = compute_poprank(bundle.graph, ppf, web.prior, poprank_config(options));
        check_converged(options, ranked, "poprank", diag);

        const auto object_ranks = ranks_by_score(ranked.scores);
        const auto page_ranks = ranks_by_score(web.prior);
        const double tau = kendall_tau(object_ranks, page_ranks);

        auto meta = run_metadata(options, bundle);
        add_ppf(meta, ppf, bundle.graph);
        add_result(meta, "", ranked);
        meta.emplace_back("kendall_tau", format_double(tau));
        add_timestamp(meta, options);

        TabularReport report{"compare", std::move(meta),
                             {"object_id", "type", "key", "object_score", "object_rank",
                              "page_score", "page_rank"},
                             {}};
        for (const auto id : order_by_score(ranked.scores)) {
            const auto &obj = bundle.graph.object(static_cast<ObjectId>(id));
            report.rows.push_back({std::to_string(id), obj.type_name, join_key(obj.key),
                                   format_double(ranked.scores[id]), std::to_string(object_ranks[id]),
                                   format_double(web.prior[id]), std::to_string(page_ranks[id])});
        }
        emit(options, out, render(report));
    });
}

} // namespace poprank
