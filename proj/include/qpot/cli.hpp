#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpot/config.hpp"
#include "qpot/report.hpp"

namespace qpot {

struct RunRequest {
    std::string command;
    Config config;
    std::string out_dir;                  // empty: no artifacts written
    std::optional<std::uint64_t> seed;    // overrides [run] seed
    std::optional<int> grid_n;            // overrides [grid] n
};

// Dispatches one lab command and returns its report. Writes report.json plus
// any grid or CSV artifacts into out_dir when one is given. Throws
// InvalidInput for unknown commands or bad configs; solver and model errors
// propagate from the callee modules.
RunReport run_command(const RunRequest& req);

const std::vector<std::string>& command_names();

}  // namespace qpot
