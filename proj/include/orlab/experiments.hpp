#pragma once

#include <string>

#include "orlab/analysis.hpp"

namespace orlab {

enum class SigmaMethod { Exhaustive, Beam, Threshold };

std::string to_string(SigmaMethod m);

struct SigmaResult {
    int N = 0;
    double error = 0.0;
    std::vector<int> support;
    SigmaMethod method = SigmaMethod::Threshold;
    bool downgraded = false;  // requested method was infeasible
};

/// Best N-term approximation error from the truncated dictionary.
/// Exhaustive enumerates supports (requires C(size, N) <= 2e6, else the
/// call is downgraded to beam and flagged); beam keeps the best 64
/// partial supports per level; threshold projects on the top-N atoms by
/// |dual coefficient|.
SigmaResult sigma_n_oracle(const GridFunction& f, const Dictionary& dict, int N,
                           SigmaMethod method);

struct SweepRow {
    double p = 0.0, alpha = 0.0, tau = 0.0;
    std::string dict;
    std::size_t grid_size = 0;
    int trunc = 0;
    int N = 0;
    double sigma_N = 0.0;
    long empirical_phi = -1;   // -1 = not reached
    long predicted_phi = 0;
    double residual_at_phi = 0.0;
    std::string flags;
};

/// One WCGA run per (target, N): sigma_N from the oracle, the empirical
/// iteration count to reach 2 sigma_N, and the calibrated predicted
/// budget. Rows that never reach the target are flagged, not dropped.
std::vector<SweepRow> lebesgue_sweep(const Dictionary& dict,
                                     const PropertyProfile& profile,
                                     const WcgaConfig& cfg,
                                     const std::vector<GridFunction>& targets,
                                     const std::vector<int>& N_list,
                                     SigmaMethod sigma_method);

struct LowerBoundInstance {
    int N = 0;          // coarse atoms, one per unit interval
    int M = 0;          // fine atoms, power of two
    double c1 = 0.0;
    double b = 0.0;     // c1 (log(e+M))^{alpha p'}
    Dictionary dict;
    GridFunction f;
    std::vector<std::size_t> coarse_ids;
    std::vector<std::size_t> fine_ids;
    double functional_balance = 0.0;  // max/min of |F_f(h_I)| over coarse+fine
};

/// The two-scale Haar target f = sum_{coarse} h_I + b sum_{fine} h_J on
/// [0, N) with M fine intervals packed into [0, 1).
LowerBoundInstance lower_bound_instance(const YoungFunction& space, int N, int M,
                                        double c1, std::size_t grid_size);

/// Bisection on c1 until coarse and fine functional values agree within
/// 5%, then biased 10% toward coarse-first (alpha >= 0) or fine-first
/// (alpha < 0).
double calibrate_c1(const YoungFunction& space, int N, int M, std::size_t grid_size);

struct LowerBoundReport {
    bool order_ok = false;          // all coarse before any fine (or mirrored)
    int first_violation_step = -1;
    double violation_coarse_value = 0.0;
    double violation_fine_value = 0.0;
    double sigma_M = 0.0;
    long iterations_to_2sigma = -1;  // -1 = not reached
    double ratio_vs_M = 0.0;
    GreedyTrace trace;
};

LowerBoundReport lower_bound_run(const LowerBoundInstance& inst, const WcgaConfig& cfg);

struct FitReport {
    double exponent = 0.0;
    double log_exponent = 0.0;  // power of log(e+x); 0 for the pure power model
    double constant = 0.0;
    double max_rel_residual = 0.0;
};

enum class FitModel { Power, PowerLogPower };

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Least squares in log space on (x, y) pairs.
FitReport scaling_fit(const std::vector<double>& x, const std::vector<double>& y,
                      FitModel model);

}  // namespace orlab
