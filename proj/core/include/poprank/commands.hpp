#ifndef POPRANK_COMMANDS_HPP_
#define POPRANK_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>

#include "poprank/corpus.hpp"
#include "poprank/poprank.hpp"
#include "poprank/web_popularity.hpp"

namespace poprank {

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,
    kExitNonConvergence = 3,
};

struct CommonOptions {
    CorpusPaths corpus;
    bool strict = false;
    double epsilon = PopRankConfig::kDefaultEpsilon;
    double damping = PageRankOptions::kDefaultDamping;
    double tol = PopRankConfig::kDefaultTol;
    std::size_t max_iter = PopRankConfig::kDefaultMaxIter;
    std::uint64_t seed = 0;
    std::string out;  // empty: standard output
    bool fail_on_nonconverge = false;
    bool timestamp = false;  // adds a wall-clock line, which breaks byte-identity
};

struct LearnOptions {
    std::string expert_path;
    std::size_t grid_resolution = 5;
    std::size_t refine_iters = 200;
    double refine_step = 0.1;
};

struct SimulateOptions {
    std::string ppf_path;
    std::size_t steps = 1'000'000;
    std::size_t burn_in = 0;
    std::size_t walkers = 1;
};

// Each command writes its report to options.out (or `out`), diagnostics to
// `diag`, and returns an ExitCode. Input errors never escape as exceptions.

int cmd_ingest(const CommonOptions &options, std::ostream &out, std::ostream &diag);
int cmd_rank(const CommonOptions &options, const std::string &ppf_path, std::ostream &out,
             std::ostream &diag);
int cmd_learn(const CommonOptions &options, const LearnOptions &learn, std::ostream &out,
              std::ostream &diag);
int cmd_simulate(const CommonOptions &options, const SimulateOptions &sim, std::ostream &out,
                 std::ostream &diag);
int cmd_compare(const CommonOptions &options, const std::string &ppf_path, std::ostream &out,
                std::ostream &diag);

} // namespace poprank

#endif // POPRANK_COMMANDS_HPP_
