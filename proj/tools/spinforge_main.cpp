#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "spinforge/experiment.hpp"

namespace {

void print_usage() {
    std::puts(
        "usage: spinforge <command> [--config <path>] [--key value ...] --out <path>\n"
        "\n"
        "commands: dispersion chi evolve bell squeeze probe fidelity phase-diagram\n"
        "\n"
        "Options mirror the config-file keys; --key value overrides the file.\n"
        "Model keys:  kind n j0 hz delta gamma kac distance chi\n"
        "Run keys:    t_max n_points frame seed jobs out\n"
        "Sweep keys:  delta_min delta_max n_delta gamma_min gamma_max n_gamma\n"
        "Trotter:     trotter_steps trotter_dt_max\n"
        "Probe:       n_theta probe_state probe_time\n"
        "\n"
        "Writes <out> as CSV plus a <out>.meta.json sidecar.\n"
        "Exit codes: 0 ok, 2 config error, 3 numerical error.");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace spinforge;
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        print_usage();
        return args.empty() ? 2 : 0;
    }
    try {
        const std::string command = args[0];
        // Collect --key value pairs; --config is consumed first so explicit
        // flags override the file.
        std::vector<std::pair<std::string, std::string>> overrides;
        std::string config_path;
        for (std::size_t i = 1; i < args.size(); i += 2) {
            const std::string& flag = args[i];
            if (flag.rfind("--", 0) != 0) {
                throw config_error("expected --key, got '" + flag + "'");
            }
            if (i + 1 >= args.size()) {
                throw config_error("flag '" + flag + "' is missing its value");
            }
            const std::string key = flag.substr(2);
            if (key == "config") {
                config_path = args[i + 1];
            } else {
                overrides.emplace_back(key, args[i + 1]);
            }
        }
        ExperimentConfig config =
            config_path.empty() ? ExperimentConfig{} : parse_config_file(config_path);
        config.set("command", command);
        for (const auto& [key, value] : overrides) config.set(key, value);
        const ResultTable table = run(config);
        if (config.output_path.empty()) {
            std::fputs(format_csv(table).c_str(), stdout);
        } else {
            std::printf("wrote %zu rows to %s\n", table.rows.size(),
                        config.output_path.c_str());
        }
        return 0;
    } catch (const argument_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    }
}
