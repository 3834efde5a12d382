#include "orlab/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

namespace orlab {

namespace {

constexpr double kE = 2.718281828459045;
constexpr double kExhaustiveBudget = 2e6;
constexpr std::size_t kBeamWidth = 64;

double binomial_approx(std::size_t n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) {
        v *= static_cast<double>(n - static_cast<std::size_t>(i)) / static_cast<double>(i + 1);
        if (v > 1e18) return v;
    }
    return v;
}

double support_error(const GridFunction& f, const Dictionary& dict,
                     const std::vector<std::size_t>& ids) {
    WcgaConfig cfg;
    cfg.stop_threshold = 1e-12;
    return chebyshev_project(f, dict, ids, nullptr, cfg).residual_norm;
}

std::vector<std::size_t> rank_by_dual_coefficient(const GridFunction& f,
                                                  const Dictionary& dict) {
    std::vector<std::pair<double, std::size_t>> ranked(dict.size());
    for (std::size_t i = 0; i < dict.size(); ++i)
        ranked[i] = {std::abs(dict.dual_coefficient(f, i)), i};
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<std::size_t> ids(ranked.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) ids[i] = ranked[i].second;
    return ids;
}

int thread_count() {
    if (const char* env = std::getenv("ORLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

std::string to_string(SigmaMethod m) {
    switch (m) {
        case SigmaMethod::Exhaustive: return "exhaustive";
        case SigmaMethod::Beam: return "beam";
        case SigmaMethod::Threshold: return "threshold";
    }
    return "?";
}

SigmaResult sigma_n_oracle(const GridFunction& f, const Dictionary& dict, int N,
                           SigmaMethod method) {
    if (N < 1 || static_cast<std::size_t>(N) > dict.size())
        throw DomainError("sigma_n_oracle: N out of range");
    SigmaResult out;
    out.N = N;
    out.method = method;

    if (method == SigmaMethod::Exhaustive &&
        binomial_approx(dict.size(), N) > kExhaustiveBudget) {
        out.method = SigmaMethod::Beam;
        out.downgraded = true;
    }

    auto finish = [&](std::vector<std::size_t> ids, double err) {
        out.error = err;
        out.support.clear();
        for (std::size_t i : ids) out.support.push_back(dict.atom(i).id);
        std::sort(out.support.begin(), out.support.end());
        return out;
    };

    if (out.method == SigmaMethod::Exhaustive) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(N));
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<std::size_t> best = idx;
        double best_err = support_error(f, dict, idx);
        const std::size_t n = dict.size();
        while (true) {
            int j = N - 1;
            while (j >= 0 &&
                   idx[static_cast<std::size_t>(j)] ==
                       n - static_cast<std::size_t>(N - j)) --j;
            if (j < 0) break;
            ++idx[static_cast<std::size_t>(j)];
            for (int k = j + 1; k < N; ++k)
                idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k - 1)] + 1;
            const double err = support_error(f, dict, idx);
            if (err < best_err) { best_err = err; best = idx; }
        }
        return finish(best, best_err);
    }

    if (out.method == SigmaMethod::Beam) {
        // candidate pool: strongest dual coefficients
        std::vector<std::size_t> pool = rank_by_dual_coefficient(f, dict);
        if (pool.size() > kBeamWidth) pool.resize(kBeamWidth);
        std::vector<std::pair<double, std::vector<std::size_t>>> beam = {
            {luxemburg_norm(f, dict.space()), {}}};
        std::pair<double, std::vector<std::size_t>> best = beam.front();
        for (int level = 0; level < N; ++level) {
            std::set<std::vector<std::size_t>> seen;
            std::vector<std::pair<double, std::vector<std::size_t>>> next;
            for (const auto& [err, ids] : beam) {
                for (std::size_t cand : pool) {
                    if (std::find(ids.begin(), ids.end(), cand) != ids.end()) continue;
                    std::vector<std::size_t> ext = ids;
                    ext.push_back(cand);
                    std::sort(ext.begin(), ext.end());
                    if (!seen.insert(ext).second) continue;
                    next.emplace_back(support_error(f, dict, ext), std::move(ext));
                }
            }
            if (next.empty()) break;
            std::sort(next.begin(), next.end());
            if (next.size() > kBeamWidth) next.resize(kBeamWidth);
            beam = std::move(next);
            if (beam.front().first < best.first) best = beam.front();
        }
        return finish(best.second, best.first);
    }

    std::vector<std::size_t> top = rank_by_dual_coefficient(f, dict);
    top.resize(static_cast<std::size_t>(N));
    std::sort(top.begin(), top.end());
    return finish(top, support_error(f, dict, top));
}

std::vector<SweepRow> lebesgue_sweep(const Dictionary& dict,
                                     const PropertyProfile& profile,
                                     const WcgaConfig& cfg,
                                     const std::vector<GridFunction>& targets,
                                     const std::vector<int>& N_list,
                                     SigmaMethod sigma_method) {
    cfg.validate();
    struct Job { std::size_t target; int N; };
    std::vector<Job> jobs;
    for (std::size_t t = 0; t < targets.size(); ++t)
        for (int N : N_list) jobs.push_back({t, N});

    auto run_job = [&](const Job& job) {
        const GridFunction& f = targets[job.target];
        SweepRow row;
        row.p = profile.p;
        row.alpha = profile.alpha;
        row.tau = cfg.tau;
        row.dict = dict.family() == AtomFamily::Haar ? "haar" : "trig";
        row.grid_size = dict.grid_size();
        row.trunc = dict.truncation();
        row.N = job.N;

        const SigmaResult sigma = sigma_n_oracle(f, dict, job.N, sigma_method);
        row.sigma_N = sigma.error;
        if (sigma.downgraded) row.flags += "sigma-downgraded;";

        const GreedyTrace trace = run_wcga(f, dict, cfg, cfg.max_iterations);
        const double target_err = 2.0 * sigma.error + 1e-9;
        const auto reached = iterations_to_target(trace, target_err);
        if (reached) {
            row.empirical_phi = *reached;
            row.residual_at_phi = trace.norm_at(static_cast<std::size_t>(*reached));
        } else {
            row.empirical_phi = -1;
            row.residual_at_phi = trace.norm_at(trace.steps());
            row.flags += "not-reached;";
        }
        row.predicted_phi = phi_budget(profile, job.N);
        return row;
    };

    // rows are independent; results are gathered in input order
    const int workers = std::min<int>(thread_count(), static_cast<int>(jobs.size()));
    std::vector<SweepRow> rows(jobs.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) rows[i] = run_job(jobs[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < jobs.size();
                     i = next.fetch_add(1))
                    rows[i] = run_job(jobs[i]);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

namespace {

void check_lower_bound_args(int N, int M, double c1) {
    if (N < 1) throw DomainError("lower_bound_instance: N must be >= 1");
    if (M < 2 || !is_power_of_two(static_cast<std::size_t>(M)))
        throw DomainError("lower_bound_instance: M must be a power of two >= 2");
    if (!(c1 > 0.0)) throw DomainError("lower_bound_instance: c1 must be > 0");
}

int lower_bound_level(int M) {
    int level = 0;
    while ((1 << level) < M) ++level;
    return level;
}

Dictionary lower_bound_dictionary(const YoungFunction& space, int N, int M,
                                  std::size_t grid_size) {
    // coarse intervals are [n, n+1), n = 1..N; the fine ones tile [0, 1)
    int width = 1;
    while (width < N + 1) width *= 2;
    return Dictionary::build_haar(space, width, lower_bound_level(M), grid_size);
}

LowerBoundInstance instance_from_dict(const YoungFunction& space, Dictionary dict,
                                      int N, int M, double c1) {
    const int level = lower_bound_level(M);
    LowerBoundInstance inst{N, M, c1,
                            c1 * std::pow(std::log(kE + M), space.alpha() * space.conjugate_exponent()),
                            std::move(dict), GridFunction(), {}, {}, 0.0};

    for (std::size_t i = 0; i < inst.dict.size(); ++i) {
        const Atom& a = inst.dict.atom(i);
        if (a.level == 0 && a.offset >= 1 && a.offset <= N) inst.coarse_ids.push_back(i);
        if (a.level == level && a.offset < M) inst.fine_ids.push_back(i);
    }
    if (inst.coarse_ids.size() != static_cast<std::size_t>(N) ||
        inst.fine_ids.size() != static_cast<std::size_t>(M))
        throw ResolutionError("lower_bound_instance: unresolvable (N, M, grid)");

    std::map<int, cplx> coeffs;
    for (std::size_t i : inst.coarse_ids) coeffs[inst.dict.atom(i).id] = 1.0;
    for (std::size_t i : inst.fine_ids) coeffs[inst.dict.atom(i).id] = inst.b;
    inst.f = inst.dict.synthesize(coeffs);

    const FunctionalKernel kern = norming_functional(inst.f, space);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i : inst.coarse_ids) {
        const double v = std::abs(pairing(kern, inst.dict.atom_fn(i)));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (std::size_t i : inst.fine_ids) {
        const double v = std::abs(pairing(kern, inst.dict.atom_fn(i)));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    inst.functional_balance = hi / lo;
    return inst;
}

}  // namespace

LowerBoundInstance lower_bound_instance(const YoungFunction& space, int N, int M,
                                        double c1, std::size_t grid_size) {
    check_lower_bound_args(N, M, c1);
    return instance_from_dict(space, lower_bound_dictionary(space, N, M, grid_size),
                              N, M, c1);
}

double calibrate_c1(const YoungFunction& space, int N, int M, std::size_t grid_size) {
    check_lower_bound_args(N, M, 1.0);
    // one dictionary build shared by every bisection step; only the target
    // function and the pairings depend on c1
    const Dictionary dict = lower_bound_dictionary(space, N, M, grid_size);
    const int level = lower_bound_level(M);
    std::vector<std::size_t> coarse_ids, fine_ids;
    for (std::size_t i = 0; i < dict.size(); ++i) {
        const Atom& a = dict.atom(i);
        if (a.level == 0 && a.offset >= 1 && a.offset <= N) coarse_ids.push_back(i);
        if (a.level == level && a.offset < M) fine_ids.push_back(i);
    }
    if (coarse_ids.size() != static_cast<std::size_t>(N) ||
        fine_ids.size() != static_cast<std::size_t>(M))
        throw ResolutionError("calibrate_c1: unresolvable (N, M, grid)");
    auto imbalance = [&](double c1) {
        const double b =
            c1 * std::pow(std::log(kE + M), space.alpha() * space.conjugate_exponent());
        std::map<int, cplx> coeffs;
        for (std::size_t i : coarse_ids) coeffs[dict.atom(i).id] = 1.0;
        for (std::size_t i : fine_ids) coeffs[dict.atom(i).id] = b;
        const GridFunction f = dict.synthesize(coeffs);
        const FunctionalKernel kern = norming_functional(f, space);
        double coarse = 0.0, fine = 0.0;
        for (std::size_t i : coarse_ids)
            coarse += std::abs(pairing(kern, dict.atom_fn(i)));
        for (std::size_t i : fine_ids)
            fine += std::abs(pairing(kern, dict.atom_fn(i)));
        coarse /= static_cast<double>(coarse_ids.size());
        fine /= static_cast<double>(fine_ids.size());
        return std::log(coarse / fine);  // decreasing in c1
    };
    double lo = 1e-3, hi = 1e3;
    if (imbalance(lo) < 0.0 || imbalance(hi) > 0.0)
        throw DomainError("calibrate_c1: balance not bracketed");
    for (int it = 0; it < 80; ++it) {
        const double mid = std::sqrt(lo * hi);
        const double v = imbalance(mid);
        if (std::abs(v) <= 0.05) { lo = hi = mid; break; }
        if (v > 0.0) lo = mid; else hi = mid;
    }
    const double c1 = std::sqrt(lo * hi);
    return space.alpha() >= 0.0 ? 0.9 * c1 : 1.1 * c1;
}

LowerBoundReport lower_bound_run(const LowerBoundInstance& inst, const WcgaConfig& cfg) {
    if (cfg.tau != 1.0) throw DomainError("lower_bound_run: tau must be 1");
    const YoungFunction& space = inst.dict.space();
    LowerBoundReport rep;

    const int steps = std::min(cfg.max_iterations, inst.N + inst.M);
    rep.trace = run_wcga(inst.f, inst.dict, cfg, steps);

    std::vector<bool> is_coarse(inst.dict.size(), false), is_fine(inst.dict.size(), false);
    for (std::size_t i : inst.coarse_ids) is_coarse[i] = true;
    for (std::size_t i : inst.fine_ids) is_fine[i] = true;

    const bool coarse_first = space.alpha() >= 0.0;
    rep.order_ok = true;
    int seen_primary = 0;
    const int primary_total = coarse_first ? inst.N : inst.M / 2;
    for (std::size_t s = 0; s < rep.trace.steps(); ++s) {
        const std::size_t id = static_cast<std::size_t>(rep.trace.selected[s]);
        const bool primary = coarse_first ? is_coarse[id] : is_fine[id];
        if (seen_primary < primary_total && !primary) {
            rep.order_ok = false;
            rep.first_violation_step = static_cast<int>(s);
            // functional values at the violation, for the calibration report
            std::map<int, cplx> coeffs;
            if (s > 0) coeffs = rep.trace.coefficients_per_step[s - 1];
            const GridFunction r = inst.f - inst.dict.synthesize(coeffs);
            const FunctionalKernel kern = norming_functional(r, space);
            for (std::size_t i : inst.coarse_ids)
                rep.violation_coarse_value = std::max(
                    rep.violation_coarse_value, std::abs(pairing(kern, inst.dict.atom_fn(i))));
            for (std::size_t i : inst.fine_ids)
                rep.violation_fine_value = std::max(
                    rep.violation_fine_value, std::abs(pairing(kern, inst.dict.atom_fn(i))));
            break;
        }
        if (primary) ++seen_primary;
    }

    // sigma_M over the natural candidate supports
    double best = std::numeric_limits<double>::infinity();
    best = std::min(best, support_error(inst.f, inst.dict, inst.fine_ids));
    {
        std::vector<std::size_t> ids = inst.coarse_ids;
        for (std::size_t i = 0; ids.size() < static_cast<std::size_t>(inst.M) &&
                                i < inst.fine_ids.size(); ++i)
            ids.push_back(inst.fine_ids[i]);
        best = std::min(best, support_error(inst.f, inst.dict, ids));
    }
    {
        std::vector<std::size_t> top = rank_by_dual_coefficient(inst.f, inst.dict);
        top.resize(static_cast<std::size_t>(inst.M));
        best = std::min(best, support_error(inst.f, inst.dict, top));
    }
    rep.sigma_M = best;

    const auto reached = iterations_to_target(rep.trace, 2.0 * rep.sigma_M + 1e-9);
    rep.iterations_to_2sigma = reached ? *reached : -1;
    rep.ratio_vs_M = reached ? static_cast<double>(*reached) / static_cast<double>(inst.M) : 0.0;
    return rep;
}

FitReport scaling_fit(const std::vector<double>& x, const std::vector<double>& y,
                      FitModel model) {
    if (x.size() != y.size() || x.size() < 5)
        throw FitError("scaling_fit: need at least 5 rows");
    const Eigen::Index n = static_cast<Eigen::Index>(x.size());
    const Eigen::Index cols = model == FitModel::Power ? 2 : 3;
    Eigen::MatrixXd A(n, cols);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        const double yi = y[static_cast<std::size_t>(i)];
        if (!(xi > 0.0) || !(yi > 0.0)) throw FitError("scaling_fit: data must be positive");
        A(i, 0) = 1.0;
        A(i, 1) = std::log(xi);
        if (cols == 3) A(i, 2) = std::log(std::log(kE + xi));
        rhs[i] = std::log(yi);
    }
    if ((A.col(1).array() - A(0, 1)).abs().maxCoeff() < 1e-12)
        throw FitError("scaling_fit: degenerate x column");
    const Eigen::VectorXd beta = A.colPivHouseholderQr().solve(rhs);
    FitReport rep;
    rep.constant = std::exp(beta[0]);
    rep.exponent = beta[1];
    if (cols == 3) rep.log_exponent = beta[2];
    const Eigen::VectorXd resid = A * beta - rhs;
    for (Eigen::Index i = 0; i < n; ++i)
        rep.max_rel_residual = std::max(rep.max_rel_residual,
                                        std::abs(std::expm1(resid[i])));
    return rep;
}

}  // namespace orlab
