#pragma once

#include <map>
#include <optional>
#include <vector>

#include "orlab/dictionary.hpp"

namespace orlab {

struct WcgaConfig {
    double tau = 1.0;                     // weakness parameter in (0, 1]
    int max_iterations = 200;
    // First-order optimality threshold, relative to ||f||.  For p < 2 the
    // norming kernel is only Holder-(p-1) where the residual crosses zero, so
    // when the optimal residual vanishes on part of the span's support the
    // achievable gap in double precision is ~eps^(p-1) (~1e-8 at p = 1.5);
    // the default leaves headroom above that floor.
    double projection_tolerance = 1e-7;
    int projection_max_inner = 20000;
    double stop_threshold = 1e-10;        // residual considered zero, relative to ||f||

    void validate() const;
};

struct SparseElement {
    std::map<int, cplx> coefficients;  // atom id -> coefficient, no zeros stored

    std::vector<int> support() const {
        std::vector<int> s;
        s.reserve(coefficients.size());
        for (const auto& [id, a] : coefficients) s.push_back(id);
        return s;
    }
};

struct ProjectionError : std::runtime_error {
    double optimality_gap;
    ProjectionError(const std::string& what, double gap)
        : std::runtime_error(what), optimality_gap(gap) {}
};

struct SelectionResult {
    std::size_t id = 0;
    double value = 0.0;  // |F_res(phi_id)|
    double sup = 0.0;    // max over the scanned dictionary
};

/// Weak greedy selection: smallest id among atoms with
/// |F_res(phi)| >= tau * sup. Empty when the residual is orthogonal to
/// the whole (truncated) dictionary.
std::optional<SelectionResult> select_atom(const FunctionalKernel& residual_kernel,
                                           const Dictionary& dict, double tau,
                                           const std::vector<bool>& excluded);

struct ProjectionResult {
    std::map<int, cplx> coefficients;
    GridFunction residual;
    double residual_norm = 0.0;
    double optimality_gap = 0.0;  // max_j |F_res(phi_j)| at exit
    int inner_iterations = 0;
};

/// Best approximation to f from span{phi_j : j in span_ids} in the
/// Luxemburg norm. Descent on the convex coefficient objective with a
/// least-squares warm start; exits on the first-order certificate
/// max_j |F_res(phi_j)| <= projection_tolerance * ||f|| or on a
/// negligible residual. Throws ProjectionError when the inner budget
/// runs out before either certificate.
ProjectionResult chebyshev_project(const GridFunction& f, const Dictionary& dict,
                                   const std::vector<std::size_t>& span_ids,
                                   const std::map<int, cplx>* warm_start,
                                   const WcgaConfig& cfg);

struct GreedyTrace {
    double initial_norm = 0.0;
    std::vector<int> selected;                 // atom ids, step order
    std::vector<double> residual_norms;        // ||f_n||, n = 1..steps
    std::vector<double> functional_sups;       // sup_phi |F_{f_{n-1}}(phi)| at step n
    std::vector<std::map<int, cplx>> coefficients_per_step;
    WcgaConfig config;
    bool stagnated = false;

    /// ||f_n|| with n = 0 meaning the untouched target.
    double norm_at(std::size_t n) const {
        return n == 0 ? initial_norm : residual_norms.at(n - 1);
    }
    std::size_t steps() const { return selected.size(); }
};

GreedyTrace run_wcga(const GridFunction& f, const Dictionary& dict,
                     const WcgaConfig& cfg, int steps);

/// Smallest n with ||f_n|| <= target_error; empty when not reached
/// within the trace.
std::optional<int> iterations_to_target(const GreedyTrace& trace, double target_error);

}  // namespace orlab
