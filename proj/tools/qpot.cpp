#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qpot/cli.hpp"
#include "qpot/errors.hpp"
#include "qpot/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qpot: grid laboratory for quaternionic pluripotential theory"};
    app.set_version_flag("--version", qpot::version_string);

    std::string command, config_path, out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid_n;

    std::string command_help = "one of:";
    for (const auto& name : qpot::command_names()) command_help += " " + name;
    app.add_option("command", command, command_help)->required();
    app.add_option("--config", config_path, "path to a key=value config file")->required();
    app.add_option("--out", out_dir, "directory for report.json and grid artifacts");
    app.add_option("--seed", seed, "override the run seed");
    app.add_option("--grid-n", grid_n, "override the grid nodes per axis (odd)");

    CLI11_PARSE(app, argc, argv);

    try {
        qpot::RunRequest req;
        req.command = command;
        req.config = qpot::Config::parse_file(config_path);
        req.out_dir = out_dir;
        req.seed = seed;
        req.grid_n = grid_n;
        qpot::RunReport rep = qpot::run_command(req);
        std::cout << rep.to_json().dump(2) << "\n";
        return rep.all_pass() ? 0 : 1;
    } catch (const qpot::OutOfModelError& e) {
        std::cerr << "out of model: " << e.what() << "\n";
        return 3;
    } catch (const qpot::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 4;
    } catch (const qpot::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
}
