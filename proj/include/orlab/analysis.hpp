#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "orlab/wcga.hpp"

namespace orlab {

/// Q(s) of property D(Q) for L^p(log L)^alpha:
///   c0 s^{p'} / (log(e+1/s))^{p' alpha_-}   for 1 < p <= 2,
///   c0 s^2                                  for p > 2.
double q_function(const YoungFunction& space, double c0, double s);

/// Inverse of the same shape, extended beyond s = 1 by the formula.
double q_function_inverse(const YoungFunction& space, double c0, double y);

/// Calibrated structural constants for one (space, dictionary) pair,
/// plus the closed-form H(n) / k_N shapes with fitted leading constants.
struct PropertyProfile {
    double p = 2.0;
    double alpha = 0.0;
    double c = 0.0;
    double q_c0 = 0.0;
    double tau = 1.0;
    double lambda1 = 2.0;
    AtomFamily dict_family = AtomFamily::Haar;
    double H_scale = 1.0;
    double kN_scale = 1.0;
    std::vector<int> measured_at;       // n where the estimators ran
    std::vector<double> H_measured;
    std::vector<double> kN_measured;
    std::uint64_t seed = 0;
    int trials = 0;
    int truncation = 0;

    double H_shape(int n) const;
    double kN_shape(int N) const;
    double H(int n) const { return H_scale * H_shape(n); }
    double kN(int N) const { return std::max(1.0, kN_scale * kN_shape(N)); }
};

/// Sampled lower bound for the modulus of smoothness rho(t) over random
/// unit pairs on the given grid.
double modulus_smoothness_estimate(const YoungFunction& space, const Domain& dom,
                                   std::size_t grid_size, double t, int trials,
                                   std::uint64_t seed);

/// Discrete Figiel transform: max over sampled t of (s t / 2 - rho(t)),
/// clamped at 0.
double figiel_transform(const std::map<double, double>& rho_samples, double s);

struct DQReport {
    double worst_slack = 0.0;   // max over samples of dist/||f|| - (1 - Q(s)) at c0 = 1
    double max_c0 = 0.0;        // largest c0 for which all samples pass
};

/// Samples property D(Q) over random (f, atom) pairs; the one-atom
/// distance comes from a single-span Chebyshev projection.
DQReport d_q_check(const YoungFunction& space, const Dictionary& dict, int trials,
                   std::uint64_t seed);

/// Sampled lower bound for k_N over random coefficients and nested
/// A subset of B, plus structured sign-split candidates for trig.
double k_n_estimate(const Dictionary& dict, int N, int trials, std::uint64_t seed);

struct IterationBudget {
    std::vector<double> G;        // G[n-1] = G(n)
    std::vector<double> G_tilde;  // summing sequence of G
    double beta = 0.0;            // 8 ln[8(1+l1) k_N / (sqrt(l1)-1)] at the build N
    int first_qc_violation = 0;   // 1-based k of the first (qc) failure, 0 if none
    bool majorized = false;       // G was replaced by its quasi-convex majorant
    bool g1_at_least_one = true;
};

/// G(n) = 1 / Q(c(tau)/H(n)) with c(tau) = tau/2 (1 - 1/sqrt(lambda1)).
/// When the pointwise quasi-convexity check fails, G is replaced by its
/// least quasi-convex majorant and the substitution is flagged.
IterationBudget g_sequence(const PropertyProfile& profile, int n_max);

double summing_sequence(const std::vector<double>& w, int n);

/// ceil(8 ln[8(1+lambda1) k_N / (sqrt(lambda1)-1)] G(2N)).
long phi_budget(const PropertyProfile& profile, int N);

struct IterationSlack {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // lhs / rhs; diagnostic only
};

/// Evaluates the per-block iteration inequality
/// ||f_{m+M}|| <= e^{-M/G(|A|)} ||f_m|| + lambda (||f - Phi|| + ||Phi_B||)
/// on a recorded trace. Purely diagnostic.
IterationSlack iteration_inequality_check(const GreedyTrace& trace,
                                          const GridFunction& f,
                                          const Dictionary& dict,
                                          const SparseElement& target,
                                          const PropertyProfile& profile, int m,
                                          int M, const std::vector<int>& A,
                                          const std::vector<int>& B);

struct SeminormalizationReport {
    double lower = 0.0;  // 1/H(1)
    double upper = 0.0;  // Q^{-1}(1)
    std::vector<int> violations;
};

SeminormalizationReport seminormalization_check(const Dictionary& dict,
                                                const PropertyProfile& profile);

/// Builds a calibrated profile: c0 from d_q_check, H/kN scales fitted
/// from the estimators at n in {4, 16, 64} (capped at the dictionary
/// size).
PropertyProfile calibrate_profile(const Dictionary& dict, double tau, double lambda1,
                                  int trials, std::uint64_t seed);

/// Random grid function with i.i.d. complex Gaussian samples.
GridFunction random_grid_function(const Domain& dom, std::size_t grid_size,
                                  std::mt19937_64& rng);

}  // namespace orlab
