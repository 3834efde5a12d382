#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

namespace orlab {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The Young function Phi(t) = int_0^t s^{p-1} (log(c+s))^{alpha p} ds
/// defining the Orlicz space L^p(log L)^alpha, together with its
/// complementary function and inverse.
///
/// Phi is evaluated through a log-log Hermite table built once at
/// construction from high-order quadrature; the closed-form integrand
/// supplies exact slopes, so table lookups are accurate to ~1e-11
/// relative while costing a few flops.
class YoungFunction {
public:
    /// c defaults to the smallest regularization keeping Phi convex:
    /// e for alpha >= 0, exp(max(e, 2|alpha|p)) for alpha < 0.
    YoungFunction(double p, double alpha);
    YoungFunction(double p, double alpha, double c);

    double p() const { return p_; }
    double alpha() const { return alpha_; }
    double c() const { return c_; }
    double conjugate_exponent() const { return p_ / (p_ - 1.0); }

    /// Phi(t)
    double eval(double t) const;
    /// Phi'(t) = t^{p-1} (log(c+t))^{alpha p}, closed form.
    double derivative(double t) const;
    /// Complementary function Psi(s) = sup_t (ts - Phi(t)).
    double complementary(double s) const;
    /// Phi^{-1}(y), y >= 0.
    double inverse(double y) const;
    /// Fundamental function phi(t) = 1 / Phi^{-1}(1/t), t > 0.
    double fundamental(double t) const;

    /// Direct adaptive quadrature of the defining integral, bypassing
    /// the table. Relative error <= 1e-10. Used for the table build and
    /// available for cross-checks.
    double eval_quadrature(double t) const;

    /// Complementary function by direct maximization (bypasses the table).
    double complementary_direct(double s) const;

private:
    void build_table();
    void build_psi_table();
    void validate_convexity() const;
    double conjugate_point(double s) const;  // argmax of ts - Phi(t)

    double p_;
    double alpha_;
    double c_;

    // tables over ln t in [u_lo_, u_hi_]: ln Phi / ln Psi and log-log slopes
    double u_lo_ = 0.0, u_hi_ = 0.0, du_ = 0.0;
    std::vector<double> log_phi_;
    std::vector<double> dlog_phi_;
    std::vector<double> log_psi_;
    std::vector<double> dlog_psi_;
};

}  // namespace orlab
