// poprank: command-line front end over the object-level ranking library.
//
//   poprank ingest   --corpus DIR
//   poprank rank     --corpus DIR --ppf FILE [--out PATH]
//   poprank learn    --corpus DIR --expert FILE [--out PATH]
//   poprank simulate --corpus DIR --ppf FILE --steps N --seed S
//   poprank compare  --corpus DIR --ppf FILE

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "poprank/commands.hpp"

namespace {

struct CorpusFlags {
    std::string dir;
    std::string schemas, objects, links, pages, page_map;

    poprank::CorpusPaths resolve() const {
        auto paths = poprank::CorpusPaths::in_directory(dir.empty() ? "." : dir);
        auto pick = [](std::string &slot, const std::string &flag) {
            if (!flag.empty())
                slot = flag;
        };
        pick(paths.schemas, schemas);
        pick(paths.objects, objects);
        pick(paths.links, links);
        pick(paths.pages, pages);
        pick(paths.page_map, page_map);
        return paths;
    }
};

void add_common(CLI::App *cmd, poprank::CommonOptions &opts, CorpusFlags &corpus) {
    cmd->add_option("--corpus", corpus.dir,
                    "Directory holding schemas.tsv, objects.tsv, links.tsv, pages.tsv, "
                    "page_objects.tsv");
    cmd->add_option("--schemas", corpus.schemas, "Schemas file (overrides --corpus)");
    cmd->add_option("--objects", corpus.objects, "Objects file (overrides --corpus)");
    cmd->add_option("--links", corpus.links, "Links file (overrides --corpus)");
    cmd->add_option("--pages", corpus.pages, "Pages file (overrides --corpus)");
    cmd->add_option("--page-map", corpus.page_map, "Page-object map file (overrides --corpus)");
    cmd->add_option("--epsilon", opts.epsilon, "Restart probability of the object walk")
        ->capture_default_str();
    cmd->add_option("--damping", opts.damping, "PageRank damping factor")->capture_default_str();
    cmd->add_option("--tol", opts.tol, "L1 convergence tolerance")->capture_default_str();
    cmd->add_option("--max-iter", opts.max_iter, "Power iteration cap")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "Random seed")->capture_default_str();
    cmd->add_flag("--strict", opts.strict, "Treat unresolved references as errors");
    cmd->add_option("--out", opts.out, "Output path (default: standard output)");
    cmd->add_flag("--fail-on-nonconverge", opts.fail_on_nonconverge,
                  "Exit with status 3 when an iteration does not converge");
    cmd->add_flag("--timestamp", opts.timestamp, "Record the wall-clock time in the report");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Object-level popularity ranking over heterogeneous object graphs"};
    app.require_subcommand(1);

    poprank::CommonOptions opts;
    CorpusFlags corpus;
    std::string ppf_path;
    poprank::LearnOptions learn;
    poprank::SimulateOptions sim;

    auto *ingest = app.add_subcommand("ingest", "Validate a corpus and summarize it");
    add_common(ingest, opts, corpus);

    auto *rank = app.add_subcommand("rank", "Rank objects by PopRank");
    add_common(rank, opts, corpus);
    rank->add_option("--ppf", ppf_path, "Propagation factor file")->required();

    auto *learn_cmd = app.add_subcommand("learn", "Learn propagation factors from an expert ranking");
    add_common(learn_cmd, opts, corpus);
    learn_cmd->add_option("--expert", learn.expert_path, "Expert ranking file")->required();
    learn_cmd->add_option("--grid-resolution", learn.grid_resolution, "Factor levels per type")
        ->capture_default_str();
    learn_cmd->add_option("--refine-iters", learn.refine_iters, "Local refinement evaluations")
        ->capture_default_str();
    learn_cmd->add_option("--refine-step", learn.refine_step, "Initial refinement step")
        ->capture_default_str();

    auto *simulate = app.add_subcommand("simulate", "Monte Carlo random object finder");
    add_common(simulate, opts, corpus);
    simulate->add_option("--ppf", sim.ppf_path, "Propagation factor file")->required();
    simulate->add_option("--steps", sim.steps, "Walk steps")->capture_default_str();
    simulate->add_option("--burn-in", sim.burn_in, "Unrecorded leading steps")->capture_default_str();
    simulate->add_option("--walkers", sim.walkers, "Independent walkers")->capture_default_str();

    auto *compare = app.add_subcommand("compare", "Object-level vs page-level ranking");
    add_common(compare, opts, corpus);
    compare->add_option("--ppf", ppf_path, "Propagation factor file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return poprank::kExitInputError;
    }

    opts.corpus = corpus.resolve();
    if (*ingest)
        return poprank::cmd_ingest(opts, std::cout, std::cerr);
    if (*rank)
        return poprank::cmd_rank(opts, ppf_path, std::cout, std::cerr);
    if (*learn_cmd)
        return poprank::cmd_learn(opts, learn, std::cout, std::cerr);
    if (*simulate)
        return poprank::cmd_simulate(opts, sim, std::cout, std::cerr);
    return poprank::cmd_compare(opts, ppf_path, std::cout, std::cerr);
}
