#include "orlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orlab {

namespace {
constexpr double kE = 2.718281828459045;

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
    return std::mt19937_64(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1)));
}
}  // namespace

double q_function(const YoungFunction& space, double c0, double s) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("q_function: s must be in (0, 1]");
    if (!(c0 > 0.0)) throw DomainError("q_function: c0 must be > 0");
    const double p = space.p();
    if (p > 2.0) return c0 * s * s;
    const double pp = space.conjugate_exponent();
    const double am = std::max(-space.alpha(), 0.0);
    return c0 * std::pow(s, pp) / std::pow(std::log(kE + 1.0 / s), pp * am);
}

namespace {
double q_shape_extended(const YoungFunction& space, double s) {
    const double p = space.p();
    if (p > 2.0) return s * s;
    const double pp = space.conjugate_exponent();
    const double am = std::max(-space.alpha(), 0.0);
    return std::pow(s, pp) / std::pow(std::log(kE + 1.0 / s), pp * am);
}
}  // namespace

double q_function_inverse(const YoungFunction& space, double c0, double y) {
    if (!(y > 0.0)) throw DomainError("q_function_inverse: y must be > 0");
    if (!(c0 > 0.0)) throw DomainError("q_function_inverse: c0 must be > 0");
    const double target = y / c0;
    double lo = 1e-12, hi = 1e12;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (q_shape_extended(space, mid) < target) lo = mid; else hi = mid;
    }
    return std::sqrt(lo * hi);
}

double PropertyProfile::H_shape(int n) const {
    const double N = static_cast<double>(n);
    const double pp = p / (p - 1.0);
    if (dict_family == AtomFamily::Haar) {
        const double ap = std::max(alpha, 0.0);
        return std::pow(N, 1.0 / pp) * std::pow(std::log(kE + N), ap);
    }
    return std::max(std::sqrt(N),
                    std::pow(N, 1.0 / p) * std::pow(std::log(kE + N), -alpha));
}

double PropertyProfile::kN_shape(int N) const {
    if (dict_family == AtomFamily::Haar) return 1.0;  // unconditional basis
    const double n = static_cast<double>(N);
    if (p > 2.0 || (p == 2.0 && alpha >= 0.0))
        return std::pow(n, 0.5 - 1.0 / p) * std::pow(std::log(kE + n), alpha);
    return std::pow(n, 1.0 / p - 0.5) * std::pow(std::log(kE + n), -alpha);
}

GridFunction random_grid_function(const Domain& dom, std::size_t grid_size,
                                  std::mt19937_64& rng) {
    GridFunction f(dom, grid_size);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        f[i] = cplx{re, im};
    }
    return f;
}

double modulus_smoothness_estimate(const YoungFunction& space, const Domain& dom,
                                   std::size_t grid_size, double t, int trials,
                                   std::uint64_t seed) {
    if (t < 0.0) throw DomainError("modulus estimate: t must be >= 0");
    if (t == 0.0) return 0.0;
    double best = 0.0;
    for (int k = 0; k < trials; ++k) {
        auto rng = trial_rng(seed, k);
        GridFunction f = random_grid_function(dom, grid_size, rng);
        GridFunction g = random_grid_function(dom, grid_size, rng);
        f *= 1.0 / luxemburg_norm(f, space);
        g *= 1.0 / luxemburg_norm(g, space);
        const GridFunction fp = f + cplx{t, 0.0} * GridFunction(g);
        const GridFunction fm = f - cplx{t, 0.0} * GridFunction(g);
        const double v = 0.5 * (luxemburg_norm(fp, space) + luxemburg_norm(fm, space) - 2.0);
        best = std::max(best, v);
    }
    return best;
}

double figiel_transform(const std::map<double, double>& rho_samples, double s) {
    if (rho_samples.empty()) throw DomainError("figiel_transform: no samples");
    if (s < 0.0) throw DomainError("figiel_transform: s must be >= 0");
    double best = 0.0;  // t -> 0+ attains 0
    for (const auto& [t, rho] : rho_samples)
        best = std::max(best, 0.5 * s * t - rho);
    return best;
}

DQReport d_q_check(const YoungFunction& space, const Dictionary& dict, int trials,
                   std::uint64_t seed) {
    WcgaConfig cfg;
    cfg.projection_tolerance = 1e-9;
    DQReport rep;
    rep.max_c0 = std::numeric_limits<double>::infinity();
    for (int k = 0; k < trials; ++k) {
        auto rng = trial_rng(seed, k);
        GridFunction f = random_grid_function(dict.domain(), dict.grid_size(), rng);
        const std::size_t ai = rng() % dict.size();
        const double nf = luxemburg_norm(f, space);
        const FunctionalKernel kern = norming_functional(f, space);
        const double s = std::min(1.0, std::abs(pairing(kern, dict.atom_fn(ai))));
        const ProjectionResult proj = chebyshev_project(f, dict, {ai}, nullptr, cfg);
        const double ratio = proj.residual_norm / nf;
        const double shape = s > 0.0 ? q_shape_extended(space, s) : 0.0;
        rep.worst_slack = std::max(rep.worst_slack, ratio - (1.0 - shape));
        if (shape > 0.0) rep.max_c0 = std::min(rep.max_c0, (1.0 - ratio) / shape);
    }
    if (!std::isfinite(rep.max_c0)) rep.max_c0 = 0.0;
    return rep;
}

double k_n_estimate(const Dictionary& dict, int N, int trials, std::uint64_t seed) {
    if (N < 1 || static_cast<std::size_t>(N) > dict.size())
        throw DomainError("k_n_estimate: N out of range");
    const YoungFunction& space = dict.space();
    double best = 0.0;

    auto ratio_of = [&](const std::vector<std::size_t>& B_ids,
                        const std::vector<cplx>& a,
                        const std::vector<bool>& in_A) {
        GridFunction fa(dict.domain(), dict.grid_size());
        GridFunction fb(dict.domain(), dict.grid_size());
        for (std::size_t j = 0; j < B_ids.size(); ++j) {
            const GridFunction& phi = dict.atom_fn(B_ids[j]);
            for (std::size_t i = 0; i < fb.size(); ++i) {
                fb[i] += a[j] * phi[i];
                if (in_A[j]) fa[i] += a[j] * phi[i];
            }
        }
        const double nb = luxemburg_norm(fb, space);
        return nb > 0.0 ? luxemburg_norm(fa, space) / nb : 0.0;
    };

    std::vector<std::size_t> all(dict.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

    for (int t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        std::vector<std::size_t> pool = all;
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t bsize =
            std::min(dict.size(), static_cast<std::size_t>(N) +
                                      rng() % (3 * static_cast<std::size_t>(N) + 1));
        std::vector<std::size_t> B(pool.begin(), pool.begin() + bsize);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<cplx> a(bsize);
        for (cplx& z : a) z = cplx{gauss(rng), gauss(rng)};
        std::vector<bool> in_A(bsize, false);
        const std::size_t asize = 1 + rng() % static_cast<std::size_t>(N);
        for (std::size_t j = 0; j < asize; ++j) in_A[j] = true;
        best = std::max(best, ratio_of(B, a, in_A));
    }

    if (dict.family() == AtomFamily::Trig) {
        // adversarial split: random signs on a full block, A = the plus part
        for (int t = 0; t < std::max(trials, 8); ++t) {
            auto rng = trial_rng(seed ^ 0x5bf03595ULL, t);
            const std::size_t bsize = std::min(dict.size(), 2 * static_cast<std::size_t>(N) + 1);
            std::vector<std::size_t> B(all.begin(), all.begin() + bsize);
            std::vector<cplx> a(bsize);
            std::vector<bool> in_A(bsize, false);
            std::size_t na = 0;
            for (std::size_t j = 0; j < bsize; ++j) {
                const bool plus = rng() & 1;
                a[j] = plus ? 1.0 : -1.0;
                if (plus && na < static_cast<std::size_t>(N)) { in_A[j] = true; ++na; }
            }
            best = std::max(best, ratio_of(B, a, in_A));
        }
    }
    return best;
}

IterationBudget g_sequence(const PropertyProfile& profile, int n_max) {
    if (n_max < 1) throw DomainError("g_sequence: n_max must be >= 1");
    if (!(profile.lambda1 > 1.0)) throw DomainError("lambda1 must be > 1");
    YoungFunction space(profile.p, profile.alpha);
    const double ct = 0.5 * profile.tau * (1.0 - 1.0 / std::sqrt(profile.lambda1));
    IterationBudget out;
    out.G.resize(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const double arg = ct / profile.H(n);
        if (!(arg > 0.0 && arg <= 1.0))
            throw DomainError("g_sequence: Q argument outside (0,1]; H too small");
        out.G[static_cast<std::size_t>(n) - 1] = 1.0 / q_function(space, profile.q_c0, arg);
    }
    out.g1_at_least_one = out.G[0] >= 1.0;
    for (int k = 1; k < n_max; ++k) {
        const double a = out.G[static_cast<std::size_t>(k) - 1] / static_cast<double>(k);
        const double b = out.G[static_cast<std::size_t>(k)] / static_cast<double>(k + 1);
        if (a > b * (1.0 + 1e-12)) { out.first_qc_violation = k; break; }
    }
    if (out.first_qc_violation != 0) {
        // least quasi-convex majorant: running max of G(k)/k, times k
        double run = 0.0;
        for (int k = 1; k <= n_max; ++k) {
            run = std::max(run, out.G[static_cast<std::size_t>(k) - 1] / static_cast<double>(k));
            out.G[static_cast<std::size_t>(k) - 1] = run * static_cast<double>(k);
        }
        out.majorized = true;
    }
    out.G_tilde.resize(out.G.size());
    double acc = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        acc += out.G[static_cast<std::size_t>(n) - 1] / static_cast<double>(n);
        out.G_tilde[static_cast<std::size_t>(n) - 1] = acc;
    }
    const double kN = profile.kN(std::max(1, n_max / 2));
    out.beta = 8.0 * std::log(8.0 * (1.0 + profile.lambda1) * kN /
                              (std::sqrt(profile.lambda1) - 1.0));
    return out;
}

double summing_sequence(const std::vector<double>& w, int n) {
    if (n < 1 || static_cast<std::size_t>(n) > w.size())
        throw DomainError("summing_sequence: n out of range");
    double s = 0.0;
    for (int j = 1; j <= n; ++j)
        s += w[static_cast<std::size_t>(j) - 1] / static_cast<double>(j);
    return s;
}

long phi_budget(const PropertyProfile& profile, int N) {
    if (!(profile.lambda1 > 1.0)) throw DomainError("phi_budget: lambda1 must be > 1");
    const IterationBudget b = g_sequence(profile, 2 * N);
    const double beta = 8.0 * std::log(8.0 * (1.0 + profile.lambda1) * profile.kN(N) /
                                       (std::sqrt(profile.lambda1) - 1.0));
    return static_cast<long>(std::ceil(beta * b.G[static_cast<std::size_t>(2 * N) - 1]));
}

IterationSlack iteration_inequality_check(const GreedyTrace& trace,
                                          const GridFunction& f,
                                          const Dictionary& dict,
                                          const SparseElement& target,
                                          const PropertyProfile& profile, int m,
                                          int M, const std::vector<int>& A,
                                          const std::vector<int>& B) {
    if (m < 0 || M < 0 || static_cast<std::size_t>(m + M) > trace.steps())
        throw DomainError("iteration_inequality_check: indices outside the trace");
    if (A.empty()) throw DomainError("iteration_inequality_check: A must be nonempty");
    const YoungFunction& space = dict.space();
    const IterationBudget budget = g_sequence(profile, std::max<int>(1, static_cast<int>(A.size())));
    const double G_A = budget.G.back();

    std::map<int, cplx> phiB;
    for (int id : B) {
        auto it = target.coefficients.find(id);
        if (it != target.coefficients.end()) phiB[id] = it->second;
    }
    const GridFunction diff = f - dict.synthesize(target.coefficients);
    const double err = luxemburg_norm(diff, space);
    const double nB = luxemburg_norm(dict.synthesize(phiB), space);

    IterationSlack out;
    out.lhs = trace.norm_at(static_cast<std::size_t>(m + M));
    out.rhs = std::exp(-static_cast<double>(M) / G_A) * trace.norm_at(static_cast<std::size_t>(m)) +
              profile.lambda1 * (err + nB);
    out.slack = out.rhs > 0.0 ? out.lhs / out.rhs : std::numeric_limits<double>::infinity();
    return out;
}

SeminormalizationReport seminormalization_check(const Dictionary& dict,
                                                const PropertyProfile& profile) {
    YoungFunction space(profile.p, profile.alpha);
    SeminormalizationReport rep;
    rep.lower = 1.0 / profile.H(1);
    rep.upper = q_function_inverse(space, profile.q_c0, 1.0);
    for (std::size_t i = 0; i < dict.size(); ++i) {
        const double n = luxemburg_norm(dict.atom_fn(i), space);
        if (n < rep.lower * (1.0 - 1e-9) || n > rep.upper * (1.0 + 1e-9))
            rep.violations.push_back(dict.atom(i).id);
    }
    return rep;
}

PropertyProfile calibrate_profile(const Dictionary& dict, double tau, double lambda1,
                                  int trials, std::uint64_t seed) {
    const YoungFunction& space = dict.space();
    PropertyProfile prof;
    prof.p = space.p();
    prof.alpha = space.alpha();
    prof.c = space.c();
    prof.tau = tau;
    prof.lambda1 = lambda1;
    prof.dict_family = dict.family();
    prof.seed = seed;
    prof.trials = trials;
    prof.truncation = dict.truncation();

    prof.q_c0 = d_q_check(space, dict, trials, seed).max_c0;

    double h_ratio = 0.0, k_ratio = 0.0;
    for (int n : {4, 16, 64}) {
        if (static_cast<std::size_t>(n) > dict.size()) continue;
        prof.measured_at.push_back(n);
        const double h = democracy_estimate(dict, n);
        const double k = k_n_estimate(dict, n, trials, seed);
        prof.H_measured.push_back(h);
        prof.kN_measured.push_back(k);
        h_ratio = std::max(h_ratio, h / prof.H_shape(n));
        k_ratio = std::max(k_ratio, k / prof.kN_shape(n));
    }
    if (h_ratio > 0.0) prof.H_scale = h_ratio;
    if (k_ratio > 0.0) prof.kN_scale = k_ratio;
    // H must dominate every single-atom coefficient: H(1) >= 1 for a
    // normalized biorthogonal system.
    prof.H_scale = std::max(prof.H_scale, 1.0 / prof.H_shape(1));
    return prof;
}

}  // namespace orlab
