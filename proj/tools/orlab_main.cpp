// Command-line front end. All numerical work happens behind the C API.
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "orlab.h"

namespace {

using nlohmann::json;

const std::set<std::string> kCommands = {"run-wcga", "estimate-properties",
                                         "lebesgue-sweep", "lower-bound", "fit"};

const std::set<std::string> kKnownKeys = {
    "command", "p", "alpha", "dict", "width", "max_level", "max_freq",
    "grid_size", "tau", "lambda1", "seed", "trials", "max_iter", "out",
    "coefficients", "sparsity", "N_list", "sigma_method", "target_kind",
    "num_targets", "N", "M", "c1", "table", "x_col", "y_col", "model"};

int usage_error(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orlab: weak Chebyshev greedy approximation in Orlicz spaces"};
    app.get_formatter()->column_width(28);

    std::string config_path, command, out_path;
    std::optional<double> p, alpha, tau, lambda1;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid_size;
    std::optional<int> trials, max_iter;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--command", command,
                   "run-wcga | estimate-properties | lebesgue-sweep | lower-bound | fit");
    app.add_option("--p", p, "exponent p > 1 of L^p(log L)^alpha");
    app.add_option("--alpha", alpha, "logarithmic exponent alpha");
    app.add_option("--tau", tau, "weakness parameter in (0, 1], default 1");
    app.add_option("--lambda1", lambda1, "budget constant lambda_1 > 1, default 2");
    app.add_option("--grid-size", grid_size, "grid cells (power of two), default 1024");
    app.add_option("--seed", seed, "64-bit seed, default 0");
    app.add_option("--out", out_path, "output path, default out.json");
    app.add_option("--trials", trials, "sampling trials for estimators");
    app.add_option("--max-iter", max_iter, "greedy iteration cap, default 200");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    json cfg = json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) return usage_error("cannot read config file " + config_path);
        try {
            in >> cfg;
        } catch (const json::exception& e) {
            return usage_error(std::string("config parse failure: ") + e.what());
        }
        if (!cfg.is_object()) return usage_error("config must be a JSON object");
    }

    // flags override file values
    if (!command.empty()) cfg["command"] = command;
    if (p) cfg["p"] = *p;
    if (alpha) cfg["alpha"] = *alpha;
    if (tau) cfg["tau"] = *tau;
    if (lambda1) cfg["lambda1"] = *lambda1;
    if (grid_size) cfg["grid_size"] = *grid_size;
    if (seed) cfg["seed"] = *seed;
    if (!out_path.empty()) cfg["out"] = out_path;
    if (trials) cfg["trials"] = *trials;
    if (max_iter) cfg["max_iter"] = *max_iter;
    if (!cfg.contains("out")) cfg["out"] = "out.json";

    for (const auto& [key, value] : cfg.items())
        if (kKnownKeys.find(key) == kKnownKeys.end())
            return usage_error("unknown config key: " + key);
    if (!cfg.contains("command")) return usage_error("missing required field: command");
    if (kCommands.find(cfg["command"].get<std::string>()) == kCommands.end())
        return usage_error("unknown command: " + cfg["command"].get<std::string>());
    if (cfg.contains("p") && !(cfg["p"].get<double>() > 1.0))
        return usage_error("p must be > 1");
    if (cfg.contains("tau")) {
        const double t = cfg["tau"].get<double>();
        if (!(t > 0.0 && t <= 1.0)) return usage_error("tau must be in (0, 1]");
    }
    if (cfg.contains("lambda1") && !(cfg["lambda1"].get<double>() > 1.0))
        return usage_error("lambda1 must be > 1");
    if (cfg.contains("grid_size")) {
        const auto g = cfg["grid_size"].get<std::size_t>();
        if (g == 0 || (g & (g - 1)) != 0)
            return usage_error("grid_size must be a power of two");
    }
    if (cfg.contains("max_iter") && cfg["max_iter"].get<int>() < 0)
        return usage_error("max_iter must be >= 0");
    if (cfg.contains("trials") && cfg["trials"].get<int>() < 0)
        return usage_error("trials must be >= 0");

    const orlab_status rc = orlab_run_command(cfg.dump().c_str());
    if (rc != ORLAB_OK) {
        std::fprintf(stderr, "error: %s: %s\n", orlab_status_string(rc),
                     orlab_last_error());
        return 1;
    }
    return 0;
}
