#include "orlab/wcga.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace orlab {

void WcgaConfig::validate() const {
    if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("tau must be in (0, 1]");
    if (max_iterations < 0) throw DomainError("max_iterations must be >= 0");
    if (!(projection_tolerance > 0.0)) throw DomainError("projection_tolerance must be > 0");
    if (projection_max_inner < 1) throw DomainError("projection_max_inner must be >= 1");
    if (!(stop_threshold > 0.0)) throw DomainError("stop_threshold must be > 0");
}

std::optional<SelectionResult> select_atom(const FunctionalKernel& residual_kernel,
                                           const Dictionary& dict, double tau,
                                           const std::vector<bool>& excluded) {
    if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("tau must be in (0, 1]");
    std::vector<double> values(dict.size(), -1.0);
    double sup = 0.0;
    const double step = residual_kernel.base.step();
    for (std::size_t i = 0; i < dict.size(); ++i) {
        if (i < excluded.size() && excluded[i]) continue;
        if (!residual_kernel.base.same_grid(dict.atom_fn(i)))
            throw GridError("select_atom: grid mismatch");
        const auto [b, e] = dict.support(i);
        const GridFunction& phi = dict.atom_fn(i);
        cplx s{};
        for (std::size_t k = b; k < e; ++k) s += residual_kernel.base[k] * phi[k];
        values[i] = std::abs(s * step);
        sup = std::max(sup, values[i]);
    }
    if (sup <= 0.0) return std::nullopt;
    for (std::size_t i = 0; i < dict.size(); ++i)
        if (values[i] >= tau * sup) return SelectionResult{i, values[i], sup};
    return std::nullopt;  // unreachable
}

namespace {

using Vec = Eigen::VectorXcd;

GridFunction residual_of(const GridFunction& f, const Dictionary& dict,
                         const std::vector<std::size_t>& ids, const Vec& c) {
    GridFunction r = f;
    for (Eigen::Index j = 0; j < c.size(); ++j) {
        const std::size_t idx = ids[static_cast<std::size_t>(j)];
        const GridFunction& phi = dict.atom_fn(idx);
        const auto [b, e] = dict.support(idx);
        const cplx a = c[j];
        for (std::size_t i = b; i < e; ++i) r[i] -= a * phi[i];
    }
    return r;
}

Eigen::MatrixXcd gram_matrix(const GridFunction& f, const Dictionary& dict,
                             const std::vector<std::size_t>& ids) {
    const Eigen::Index n = static_cast<Eigen::Index>(ids.size());
    Eigen::MatrixXcd G(n, n);
    const double step = f.step();
    for (Eigen::Index j = 0; j < n; ++j) {
        const std::size_t ij = ids[static_cast<std::size_t>(j)];
        const GridFunction& pj = dict.atom_fn(ij);
        const auto [jb, je] = dict.support(ij);
        for (Eigen::Index k = j; k < n; ++k) {
            const std::size_t ik = ids[static_cast<std::size_t>(k)];
            const GridFunction& pk = dict.atom_fn(ik);
            const auto [kb, ke] = dict.support(ik);
            const std::size_t lo = std::max(jb, kb), hi = std::min(je, ke);
            cplx s{};
            for (std::size_t i = lo; i < hi; ++i) s += std::conj(pj[i]) * pk[i];
            G(j, k) = s * step;
            G(k, j) = std::conj(G(j, k));
        }
    }
    return G;
}

Vec least_squares_coeffs(const GridFunction& f, const Dictionary& dict,
                         const std::vector<std::size_t>& ids,
                         const Eigen::LDLT<Eigen::MatrixXcd>& gram) {
    const Eigen::Index n = static_cast<Eigen::Index>(ids.size());
    Vec b(n);
    const double step = f.step();
    for (Eigen::Index j = 0; j < n; ++j) {
        const std::size_t ij = ids[static_cast<std::size_t>(j)];
        const GridFunction& pj = dict.atom_fn(ij);
        const auto [jb, je] = dict.support(ij);
        cplx s{};
        for (std::size_t i = jb; i < je; ++i) s += std::conj(pj[i]) * f[i];
        b[j] = s * step;
    }
    return gram.solve(b);
}

}  // namespace

ProjectionResult chebyshev_project(const GridFunction& f, const Dictionary& dict,
                                   const std::vector<std::size_t>& span_ids,
                                   const std::map<int, cplx>* warm_start,
                                   const WcgaConfig& cfg) {
    cfg.validate();
    if (span_ids.empty()) throw DomainError("chebyshev_project: empty span");
    const YoungFunction& space = dict.space();
    const double norm_f = luxemburg_norm(f, space);
    const Eigen::Index n = static_cast<Eigen::Index>(span_ids.size());

    auto objective = [&](const Vec& c) {
        return luxemburg_norm(residual_of(f, dict, span_ids, c), space);
    };
    auto functional_at = [&](const FunctionalKernel& kern, std::size_t idx) {
        const auto [b, e] = dict.support(idx);
        const GridFunction& phi = dict.atom_fn(idx);
        cplx s{};
        for (std::size_t i = b; i < e; ++i) s += kern.base[i] * phi[i];
        return s * kern.base.step();
    };

    // The L2 Gram preconditions the descent direction: it is the exact
    // Hessian metric in the Hilbert case and a well-scaled surrogate
    // otherwise, which keeps multi-scale overlapping spans conditioned.
    const Eigen::LDLT<Eigen::MatrixXcd> gram = gram_matrix(f, dict, span_ids).ldlt();

    // Warm-start candidates: caller coefficients and the L2 projection.
    Vec c = least_squares_coeffs(f, dict, span_ids, gram);
    double obj = objective(c);
    if (warm_start != nullptr) {
        Vec w = Vec::Zero(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            auto it = warm_start->find(dict.atom(span_ids[static_cast<std::size_t>(j)]).id);
            if (it != warm_start->end()) w[j] = it->second;
        }
        const double wobj = objective(w);
        if (wobj < obj) { c = w; obj = wobj; }
    }

    ProjectionResult out;
    Vec grad(n), prev_c(n), prev_grad(n);
    // Near the optimum the objective decrease per step drops below the
    // norm-evaluation noise floor while the gradient is still accurately
    // computable, so the line search is non-monotone (reference = recent
    // maximum plus a noise slack) and convergence is judged on the gap.
    const double noise = 1e-12 * norm_f;
    std::vector<double> recent_objs = {obj};
    Vec c_best = c;
    double gap_best = std::numeric_limits<double>::infinity();
    int since_gap_progress = 0;
    double step_len = 1.0;
    bool have_prev = false;
    bool done = false;
    int it = 0;
    for (; it < cfg.projection_max_inner; ++it) {
        GridFunction r = residual_of(f, dict, span_ids, c);
        const double rn = luxemburg_norm(r, space);
        if (rn <= cfg.stop_threshold * norm_f) {
            out.residual = std::move(r);
            out.residual_norm = rn;
            out.optimality_gap = 0.0;
            done = true;
            break;
        }
        const FunctionalKernel kern = norming_functional(r, space);
        double gap = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const cplx Fj = functional_at(kern, span_ids[static_cast<std::size_t>(j)]);
            grad[j] = -std::conj(Fj);  // d||r||/dc_j
            gap = std::max(gap, std::abs(Fj));
        }
        if (gap < 0.999 * gap_best) {
            gap_best = gap;
            c_best = c;
            since_gap_progress = 0;
        } else if (++since_gap_progress > 500) {
            break;  // no measurable progress toward the certificate
        }
        if (gap <= cfg.projection_tolerance * norm_f) {
            out.residual = std::move(r);
            out.residual_norm = rn;
            out.optimality_gap = gap;
            done = true;
            break;
        }
        // Preconditioned Barzilai-Borwein step, non-monotone backtracking.
        const Vec dir = gram.solve(grad);
        if (have_prev) {
            const Vec dc = c - prev_c;
            const Vec dg = dir - prev_grad;
            const double denom = std::abs(std::real(dg.dot(dg)));
            if (denom > 0.0) step_len = std::abs(std::real(dc.dot(dg))) / denom;
            if (!(step_len > 0.0) || !std::isfinite(step_len)) step_len = 1.0;
        }
        prev_c = c;
        prev_grad = dir;
        const double obj_ref =
            *std::max_element(recent_objs.begin(), recent_objs.end()) + noise;
        double s = step_len;
        Vec trial = c - s * dir;
        double tobj = objective(trial);
        int bt = 0;
        while (tobj > obj_ref && bt < 60) {
            s *= 0.5;
            trial = c - s * dir;
            tobj = objective(trial);
            ++bt;
        }
        if (tobj > obj_ref) continue;  // keep c; the BB scale resets next round
        c = trial;
        obj = tobj;
        recent_objs.push_back(obj);
        if (recent_objs.size() > 8) recent_objs.erase(recent_objs.begin());
        have_prev = true;
    }
    if (!done) {
        c = c_best;
        GridFunction r = residual_of(f, dict, span_ids, c);
        const double rn = luxemburg_norm(r, space);
        const FunctionalKernel kern = norming_functional(r, space);
        double gap = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            gap = std::max(gap, std::abs(functional_at(kern, span_ids[static_cast<std::size_t>(j)])));
        if (rn > cfg.stop_threshold * norm_f && gap > cfg.projection_tolerance * norm_f)
            throw ProjectionError("chebyshev_project: inner budget exhausted", gap / norm_f);
        out.residual = std::move(r);
        out.residual_norm = rn;
        out.optimality_gap = gap;
    }
    out.inner_iterations = it;
    for (Eigen::Index j = 0; j < n; ++j)
        if (c[j] != cplx{0.0, 0.0})
            out.coefficients[dict.atom(span_ids[static_cast<std::size_t>(j)]).id] = c[j];
    return out;
}

GreedyTrace run_wcga(const GridFunction& f, const Dictionary& dict,
                     const WcgaConfig& cfg, int steps) {
    cfg.validate();
    if (steps > cfg.max_iterations) throw DomainError("steps exceeds max_iterations");
    GreedyTrace trace;
    trace.config = cfg;
    trace.initial_norm = luxemburg_norm(f, dict.space());
    if (trace.initial_norm == 0.0) return trace;

    GridFunction residual = f;
    double residual_norm = trace.initial_norm;
    std::vector<std::size_t> span;
    std::vector<bool> excluded(dict.size(), false);
    std::map<int, cplx> coeffs;

    for (int n = 0; n < steps; ++n) {
        if (residual_norm <= cfg.stop_threshold * trace.initial_norm) break;
        const FunctionalKernel kern = norming_functional(residual, dict.space());
        const auto pick = select_atom(kern, dict, cfg.tau, excluded);
        if (!pick) {
            trace.stagnated = true;
            break;
        }
        span.push_back(pick->id);
        excluded[pick->id] = true;
        ProjectionResult proj = chebyshev_project(f, dict, span, &coeffs, cfg);
        coeffs = proj.coefficients;
        residual = std::move(proj.residual);
        residual_norm = proj.residual_norm;

        trace.selected.push_back(dict.atom(pick->id).id);
        trace.residual_norms.push_back(residual_norm);
        trace.functional_sups.push_back(pick->sup);
        trace.coefficients_per_step.push_back(coeffs);
    }
    return trace;
}

std::optional<int> iterations_to_target(const GreedyTrace& trace, double target_error) {
    if (!(target_error > 0.0)) throw DomainError("target_error must be > 0");
    if (trace.initial_norm <= target_error) return 0;
    for (std::size_t n = 0; n < trace.residual_norms.size(); ++n)
        if (trace.residual_norms[n] <= target_error) return static_cast<int>(n) + 1;
    return std::nullopt;
}

}  // namespace orlab
