#include "orlab.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>

#include "json.hpp"
#include "orlab/io.hpp"

namespace {

using nlohmann::json;
using namespace orlab;

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename F>
orlab_status guarded(F&& fn) {
    try {
        fn();
        return ORLAB_OK;
    } catch (const ResolutionError& e) {
        set_error(e.what());
        return ORLAB_ERR_RESOLUTION;
    } catch (const ProjectionError& e) {
        set_error(e.what());
        return ORLAB_ERR_PROJECTION;
    } catch (const IoError& e) {
        set_error(e.what());
        return ORLAB_ERR_IO;
    } catch (const DomainError& e) {
        set_error(e.what());
        return ORLAB_ERR_DOMAIN;
    } catch (const GridError& e) {
        set_error(e.what());
        return ORLAB_ERR_DOMAIN;
    } catch (const UndefinedFunctionalError& e) {
        set_error(e.what());
        return ORLAB_ERR_DOMAIN;
    } catch (const FitError& e) {
        set_error(e.what());
        return ORLAB_ERR_DOMAIN;
    } catch (const json::exception& e) {
        set_error(e.what());
        return ORLAB_ERR_DOMAIN;
    } catch (const std::exception& e) {
        set_error(e.what());
        return ORLAB_ERR_INTERNAL;
    }
}

GridFunction buffer_to_grid(const double* re, const double* im, size_t n, int torus,
                            int width) {
    const Domain dom = torus ? Domain{DomainKind::Torus, 0}
                             : Domain{DomainKind::Interval, width};
    GridFunction f(dom, n);
    for (size_t i = 0; i < n; ++i) f[i] = {re[i], im ? im[i] : 0.0};
    return f;
}

}  // namespace

struct orlab_space {
    YoungFunction fn;
};
struct orlab_dictionary {
    Dictionary dict;
};
struct orlab_trace {
    GreedyTrace trace;
};

extern "C" {

const char* orlab_status_string(orlab_status status) {
    switch (status) {
        case ORLAB_OK: return "ok";
        case ORLAB_ERR_DOMAIN: return "domain error";
        case ORLAB_ERR_RESOLUTION: return "resolution error";
        case ORLAB_ERR_PROJECTION: return "projection error";
        case ORLAB_ERR_IO: return "i/o error";
        case ORLAB_ERR_BAD_HANDLE: return "bad handle";
        case ORLAB_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* orlab_last_error(void) { return g_last_error.c_str(); }

orlab_status orlab_space_create(double p, double alpha, orlab_space** out) {
    if (!out) return ORLAB_ERR_BAD_HANDLE;
    return guarded([&] { *out = new orlab_space{YoungFunction(p, alpha)}; });
}

void orlab_space_destroy(orlab_space* space) { delete space; }

orlab_status orlab_young_eval(const orlab_space* space, double t, double* out) {
    if (!space || !out) return ORLAB_ERR_BAD_HANDLE;
    return guarded([&] { *out = space->fn.eval(t); });
}

orlab_status orlab_young_inverse(const orlab_space* space, double y, double* out) {
    if (!space || !out) return ORLAB_ERR_BAD_HANDLE;
    return guarded([&] { *out = space->fn.inverse(y); });
}

orlab_status orlab_fundamental(const orlab_space* space, double t, double* out) {
    if (!space || !out) return ORLAB_ERR_BAD_HANDLE;
    return guarded([&] { *out = space->fn.fundamental(t); });
}

orlab_status orlab_luxemburg_norm(const orlab_space* space, const double* re,
                                  const double* im, size_t n, int torus, int width,
                                  double* out) {
    if (!space || !re || !out) return ORLAB_ERR_BAD_HANDLE;
    return guarded([&] {
        *out = luxemburg_norm(buffer_to_grid(re, im, n, torus, width), space->fn);
    });
}

orlab_status orlab_dictionary_create_haar(const orlab_space* space, int width,
                                          int max_level, size_t grid_size,
                                          orlab_dictionary** out) {
    if (!space || !out) return ORLAB_ERR_BAD_HANDLE;
    return guarded([&] {
        *out = new orlab_dictionary{
            Dictionary::build_haar(space->fn, width, max_level, grid_size)};
    });
}

orlab_status orlab_dictionary_create_trig(const orlab_space* space, int max_freq,
                                          size_t grid_size, orlab_dictionary** out) {
    if (!space || !out) return ORLAB_ERR_BAD_HANDLE;
    return guarded([&] {
        *out = new orlab_dictionary{Dictionary::build_trig(space->fn, max_freq, grid_size)};
    });
}

void orlab_dictionary_destroy(orlab_dictionary* dict) { delete dict; }

orlab_status orlab_dictionary_size(const orlab_dictionary* dict, size_t* out) {
    if (!dict || !out) return ORLAB_ERR_BAD_HANDLE;
    *out = dict->dict.size();
    return ORLAB_OK;
}

orlab_status orlab_run_wcga(const orlab_dictionary* dict, const double* re,
                            const double* im, size_t n, double tau, int max_iter,
                            orlab_trace** out) {
    if (!dict || !re || !out) return ORLAB_ERR_BAD_HANDLE;
    return guarded([&] {
        const Domain& dom = dict->dict.domain();
        GridFunction f = buffer_to_grid(re, im, n, dom.kind == DomainKind::Torus,
                                        dom.width);
        WcgaConfig cfg;
        cfg.tau = tau;
        cfg.max_iterations = max_iter;
        *out = new orlab_trace{run_wcga(f, dict->dict, cfg, max_iter)};
    });
}

void orlab_trace_destroy(orlab_trace* trace) { delete trace; }

orlab_status orlab_trace_steps(const orlab_trace* trace, size_t* out) {
    if (!trace || !out) return ORLAB_ERR_BAD_HANDLE;
    *out = trace->trace.steps();
    return ORLAB_OK;
}

orlab_status orlab_trace_initial_norm(const orlab_trace* trace, double* out) {
    if (!trace || !out) return ORLAB_ERR_BAD_HANDLE;
    *out = trace->trace.initial_norm;
    return ORLAB_OK;
}

orlab_status orlab_trace_residual_norm(const orlab_trace* trace, size_t step,
                                       double* out) {
    if (!trace || !out) return ORLAB_ERR_BAD_HANDLE;
    if (step >= trace->trace.steps()) {
        set_error("step out of range");
        return ORLAB_ERR_DOMAIN;
    }
    *out = trace->trace.residual_norms[step];
    return ORLAB_OK;
}

orlab_status orlab_trace_atom_id(const orlab_trace* trace, size_t step, int* out) {
    if (!trace || !out) return ORLAB_ERR_BAD_HANDLE;
    if (step >= trace->trace.steps()) {
        set_error("step out of range");
        return ORLAB_ERR_DOMAIN;
    }
    *out = trace->trace.selected[step];
    return ORLAB_OK;
}

orlab_status orlab_trace_write(const orlab_trace* trace, const char* path) {
    if (!trace || !path) return ORLAB_ERR_BAD_HANDLE;
    return guarded([&] { atomic_write(path, trace_to_json(trace->trace).dump(2) + "\n"); });
}

}  // extern "C"

namespace {

std::mt19937_64 derived_rng(std::uint64_t seed, int index) {
    return std::mt19937_64(seed ^
                           (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1)));
}

GridFunction sparse_target(const Dictionary& dict, int sparsity, std::mt19937_64& rng) {
    if (sparsity < 1 || static_cast<std::size_t>(sparsity) > dict.size())
        throw DomainError("sparsity out of range for the dictionary");
    std::vector<std::size_t> pool(dict.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::map<int, cplx> coeffs;
    for (int k = 0; k < sparsity; ++k)
        coeffs[dict.atom(pool[static_cast<std::size_t>(k)]).id] = {gauss(rng), gauss(rng)};
    return dict.synthesize(coeffs);
}

const std::vector<std::string> kKnownKeys = {
    "command", "p", "alpha", "dict", "width", "max_level", "max_freq",
    "grid_size", "tau", "lambda1", "seed", "trials", "max_iter", "out",
    "coefficients", "sparsity", "N_list", "sigma_method", "target_kind",
    "num_targets", "N", "M", "c1", "table", "x_col", "y_col", "model"};

void check_keys(const json& cfg) {
    for (const auto& [key, value] : cfg.items())
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw DomainError("unknown config key: " + key);
}

Dictionary dict_from_config(const json& cfg, const YoungFunction& space) {
    const std::string kind = cfg.value("dict", "haar");
    const std::size_t grid = cfg.value("grid_size", std::size_t{1024});
    if (kind == "haar")
        return Dictionary::build_haar(space, cfg.value("width", 8),
                                      cfg.value("max_level", 5), grid);
    if (kind == "trig")
        return Dictionary::build_trig(space, cfg.value("max_freq", 64), grid);
    throw DomainError("dict must be haar or trig");
}

WcgaConfig wcga_config(const json& cfg) {
    WcgaConfig out;
    out.tau = cfg.value("tau", 1.0);
    out.max_iterations = cfg.value("max_iter", 200);
    out.validate();
    return out;
}

void run_command_impl(const json& cfg) {
    check_keys(cfg);
    const std::string command = cfg.at("command").get<std::string>();
    const std::string out_path = cfg.at("out").get<std::string>();
    const std::uint64_t seed = cfg.value("seed", std::uint64_t{0});

    if (command == "fit") {
        const TextTable table = parse_table(read_file(cfg.at("table").get<std::string>()));
        const std::string model_name = cfg.value("model", "power");
        if (model_name != "power" && model_name != "power-log-power")
            throw DomainError("model must be power or power-log-power");
        const FitReport rep = scaling_fit(
            table.column(cfg.at("x_col").get<std::string>()),
            table.column(cfg.at("y_col").get<std::string>()),
            model_name == "power" ? FitModel::Power : FitModel::PowerLogPower);
        const json doc = {{"schema_version", kSchemaVersion},
                          {"kind", "fit"},
                          {"model", model_name},
                          {"exponent", format_double(rep.exponent)},
                          {"log_exponent", format_double(rep.log_exponent)},
                          {"constant", format_double(rep.constant)},
                          {"max_rel_residual", format_double(rep.max_rel_residual)}};
        atomic_write(out_path, doc.dump(2) + "\n");
        return;
    }

    const YoungFunction space(cfg.value("p", 2.0), cfg.value("alpha", 0.0));

    if (command == "run-wcga") {
        const Dictionary dict = dict_from_config(cfg, space);
        GridFunction f;
        if (cfg.contains("coefficients")) {
            std::map<int, cplx> coeffs;
            auto jnum = [](const json& v) {
                return v.is_string() ? parse_double(v.get<std::string>())
                                     : v.get<double>();
            };
            for (const auto& [key, val] : cfg.at("coefficients").items())
                coeffs[std::stoi(key)] = {jnum(val.at(0)), jnum(val.at(1))};
            f = dict.synthesize(coeffs);
        } else {
            std::mt19937_64 rng = derived_rng(seed, 0);
            f = sparse_target(dict, cfg.value("sparsity", 8), rng);
        }
        const WcgaConfig wcfg = wcga_config(cfg);
        const GreedyTrace trace = run_wcga(f, dict, wcfg, wcfg.max_iterations);
        for (std::size_t n = 0; n < trace.steps(); ++n)
            std::fprintf(stderr, "step %zu residual %.6e\n", n + 1,
                         trace.residual_norms[n]);
        atomic_write(out_path, trace_to_json(trace).dump(2) + "\n");
        return;
    }

    if (command == "estimate-properties") {
        const Dictionary dict = dict_from_config(cfg, space);
        const PropertyProfile profile =
            calibrate_profile(dict, cfg.value("tau", 1.0), cfg.value("lambda1", 2.0),
                              cfg.value("trials", 100), seed);
        atomic_write(out_path, profile_to_json(profile).dump(2) + "\n");
        return;
    }

    if (command == "lebesgue-sweep") {
        const Dictionary dict = dict_from_config(cfg, space);
        const PropertyProfile profile =
            calibrate_profile(dict, cfg.value("tau", 1.0), cfg.value("lambda1", 2.0),
                              cfg.value("trials", 50), seed);
        const WcgaConfig wcfg = wcga_config(cfg);
        std::vector<int> N_list = cfg.value("N_list", std::vector<int>{2, 4, 8, 16, 32});
        const std::string method_name = cfg.value("sigma_method", "threshold");
        SigmaMethod method = SigmaMethod::Threshold;
        if (method_name == "exhaustive") method = SigmaMethod::Exhaustive;
        else if (method_name == "beam") method = SigmaMethod::Beam;
        else if (method_name != "threshold")
            throw DomainError("sigma_method must be exhaustive, beam, or threshold");
        const std::string target_kind = cfg.value("target_kind", "exact-sparse");
        if (target_kind != "exact-sparse" && target_kind != "noisy-sparse")
            throw DomainError("target_kind must be exact-sparse or noisy-sparse");
        const int num_targets = cfg.value("num_targets", 1);

        std::vector<SweepRow> rows;
        int target_index = 0;
        for (int N : N_list) {
            std::vector<GridFunction> targets;
            for (int t = 0; t < num_targets; ++t) {
                std::mt19937_64 rng = derived_rng(seed, target_index++);
                const int sparsity = cfg.value("sparsity", N);
                GridFunction f = sparse_target(dict, sparsity, rng);
                if (target_kind == "noisy-sparse") {
                    GridFunction noise = random_grid_function(dict.domain(),
                                                              dict.grid_size(), rng);
                    noise *= 0.1 * f.l2_norm() / noise.l2_norm();
                    f += noise;
                }
                targets.push_back(std::move(f));
            }
            auto batch = lebesgue_sweep(dict, profile, wcfg, targets, {N}, method);
            for (SweepRow& r : batch) rows.push_back(std::move(r));
        }
        for (std::size_t i = 0; i < rows.size(); ++i)
            std::fprintf(stderr, "row %zu N=%d sigma=%.3e phi=%ld\n", i + 1, rows[i].N,
                         rows[i].sigma_N, rows[i].empirical_phi);
        atomic_write(out_path, table_to_text(rows));
        return;
    }

    if (command == "lower-bound") {
        const int N = cfg.value("N", 8);
        const int M = cfg.value("M", 16);
        const std::size_t grid = cfg.value("grid_size", std::size_t{4096});
        double c1 = cfg.value("c1", 0.0);
        if (!(c1 > 0.0)) c1 = calibrate_c1(space, N, M, grid);
        const LowerBoundInstance inst = lower_bound_instance(space, N, M, c1, grid);
        WcgaConfig wcfg = wcga_config(cfg);
        if (wcfg.tau != 1.0) throw DomainError("lower-bound requires tau = 1");
        wcfg.max_iterations = std::max(wcfg.max_iterations, N + M);
        const LowerBoundReport rep = lower_bound_run(inst, wcfg);
        for (std::size_t n = 0; n < rep.trace.steps(); ++n)
            std::fprintf(stderr, "step %zu residual %.6e\n", n + 1,
                         rep.trace.residual_norms[n]);
        const json doc = {{"schema_version", kSchemaVersion},
                          {"kind", "lower-bound"},
                          {"N", N},
                          {"M", M},
                          {"c1", format_double(c1)},
                          {"b", format_double(inst.b)},
                          {"functional_balance", format_double(inst.functional_balance)},
                          {"order_ok", rep.order_ok},
                          {"first_violation_step", rep.first_violation_step},
                          {"sigma_M", format_double(rep.sigma_M)},
                          {"iterations_to_2sigma", rep.iterations_to_2sigma},
                          {"ratio_vs_M", format_double(rep.ratio_vs_M)},
                          {"trace", trace_to_json(rep.trace)}};
        atomic_write(out_path, doc.dump(2) + "\n");
        return;
    }

    throw DomainError("unknown command: " + command);
}

}  // namespace

extern "C" orlab_status orlab_run_command(const char* config_json) {
    if (!config_json) return ORLAB_ERR_BAD_HANDLE;
    return guarded([&] {
        const json cfg = json::parse(config_json);
        run_command_impl(cfg);
    });
}
