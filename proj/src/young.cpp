#include "orlab/young.hpp"

#include <algorithm>
#include <cmath>

namespace orlab {

namespace {

// 15-point Gauss-Legendre on [-1, 1]
constexpr int kGL = 15;
constexpr double kGLNode[kGL] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr double kGLWeight[kGL] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

constexpr std::size_t kTableSize = 4096;
constexpr double kTableLo = 1e-9;
constexpr double kTableHi = 1e9;

double default_c(double p, double alpha) {
    if (alpha >= 0.0) return std::exp(1.0);
    return std::exp(std::max(std::exp(1.0), 2.0 * std::abs(alpha) * p));
}

}  // namespace

YoungFunction::YoungFunction(double p, double alpha)
    : YoungFunction(p, alpha, default_c(p, alpha)) {}

YoungFunction::YoungFunction(double p, double alpha, double c)
    : p_(p), alpha_(alpha), c_(c) {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("p must be > 1");
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    if (!(c >= std::exp(1.0))) throw DomainError("c must be >= e");
    validate_convexity();
    build_table();
    build_psi_table();
}

double YoungFunction::derivative(double t) const {
    if (t < 0.0 || !std::isfinite(t)) throw DomainError("derivative: t must be >= 0 and finite");
    if (t == 0.0) return 0.0;
    return std::pow(t, p_ - 1.0) * std::pow(std::log(c_ + t), alpha_ * p_);
}

double YoungFunction::eval_quadrature(double t) const {
    if (t < 0.0 || !std::isfinite(t)) throw DomainError("young_eval: t must be >= 0 and finite");
    if (t == 0.0) return 0.0;
    // Geometric segments [t/2^{k+1}, t/2^k]; each is resolved exactly by
    // GL15 since the integrand is analytic with bounded variation there.
    const int segments = static_cast<int>(std::ceil(62.0 / p_));
    double acc = 0.0;
    double hi = t;
    for (int k = 0; k < segments; ++k) {
        const double lo = hi * 0.5;
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        double seg = 0.0;
        for (int i = 0; i < kGL; ++i) {
            const double s = mid + half * kGLNode[i];
            seg += kGLWeight[i] * std::pow(s, p_ - 1.0) * std::pow(std::log(c_ + s), alpha_ * p_);
        }
        acc += seg * half;
        hi = lo;
    }
    // Remaining [0, hi]: the log factor is constant to O(hi/c) there.
    const double lc = std::log(c_);
    acc += std::pow(lc, alpha_ * p_) *
           (std::pow(hi, p_) / p_ +
            alpha_ * p_ / (c_ * lc) * std::pow(hi, p_ + 1.0) / (p_ + 1.0));
    return acc;
}

void YoungFunction::build_table() {
    u_lo_ = std::log(kTableLo);
    u_hi_ = std::log(kTableHi);
    du_ = (u_hi_ - u_lo_) / static_cast<double>(kTableSize - 1);
    log_phi_.resize(kTableSize);
    dlog_phi_.resize(kTableSize);

    double prev_t = kTableLo;
    double phi = eval_quadrature(prev_t);
    log_phi_[0] = std::log(phi);
    dlog_phi_[0] = prev_t * derivative(prev_t) / phi;
    for (std::size_t k = 1; k < kTableSize; ++k) {
        const double t = std::exp(u_lo_ + du_ * static_cast<double>(k));
        // one GL15 panel per increment; the ratio t/prev_t is ~1.01
        const double mid = 0.5 * (prev_t + t);
        const double half = 0.5 * (t - prev_t);
        double seg = 0.0;
        for (int i = 0; i < kGL; ++i) {
            const double s = mid + half * kGLNode[i];
            seg += kGLWeight[i] * std::pow(s, p_ - 1.0) * std::pow(std::log(c_ + s), alpha_ * p_);
        }
        phi += seg * half;
        log_phi_[k] = std::log(phi);
        dlog_phi_[k] = t * derivative(t) / phi;
        prev_t = t;
    }
}

double YoungFunction::eval(double t) const {
    if (t < 0.0 || !std::isfinite(t)) throw DomainError("young_eval: t must be >= 0 and finite");
    if (t == 0.0) return 0.0;
    const double u = std::log(t);
    if (u < u_lo_) {
        const double lc = std::log(c_);
        return std::pow(lc, alpha_ * p_) *
               (std::pow(t, p_) / p_ +
                alpha_ * p_ / (c_ * lc) * std::pow(t, p_ + 1.0) / (p_ + 1.0));
    }
    if (u > u_hi_) return eval_quadrature(t);
    const double x = (u - u_lo_) / du_;
    std::size_t k = std::min(static_cast<std::size_t>(x), kTableSize - 2);
    const double s = x - static_cast<double>(k);
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    const double L = h00 * log_phi_[k] + h10 * du_ * dlog_phi_[k] +
                     h01 * log_phi_[k + 1] + h11 * du_ * dlog_phi_[k + 1];
    return std::exp(L);
}

double YoungFunction::conjugate_point(double s) const {
    // Solve Phi'(t) = s; Phi' is strictly increasing.
    double lo = std::pow(s, 1.0 / (p_ - 1.0));
    double hi = lo;
    while (derivative(lo) > s) lo *= 0.5;
    while (derivative(hi) < s) hi *= 2.0;
    // safeguarded Newton on g(t) = Phi'(t) - s
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double g = derivative(t) - s;
        if (g > 0.0) hi = t; else lo = t;
        const double lct = std::log(c_ + t);
        const double gp = (p_ - 1.0) * std::pow(t, p_ - 2.0) * std::pow(lct, alpha_ * p_) +
                          std::pow(t, p_ - 1.0) * alpha_ * p_ * std::pow(lct, alpha_ * p_ - 1.0) / (c_ + t);
        double tn = t - g / gp;
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (std::abs(tn - t) <= 1e-14 * t) { t = tn; break; }
        t = tn;
    }
    return t;
}

double YoungFunction::complementary_direct(double s) const {
    if (s < 0.0 || !std::isfinite(s)) throw DomainError("young_complementary: s must be >= 0 and finite");
    if (s == 0.0) return 0.0;
    // Near the maximizer the objective is flat, so t-error enters squared.
    const double t = conjugate_point(s);
    return s * t - eval(t);
}

void YoungFunction::build_psi_table() {
    log_psi_.resize(kTableSize);
    dlog_psi_.resize(kTableSize);
    for (std::size_t k = 0; k < kTableSize; ++k) {
        const double s = std::exp(u_lo_ + du_ * static_cast<double>(k));
        const double t = conjugate_point(s);
        const double psi = s * t - eval(t);
        log_psi_[k] = std::log(psi);
        dlog_psi_[k] = s * t / psi;  // Psi'(s) = conjugate point
    }
}

double YoungFunction::complementary(double s) const {
    if (s < 0.0 || !std::isfinite(s)) throw DomainError("young_complementary: s must be >= 0 and finite");
    if (s == 0.0) return 0.0;
    const double u = std::log(s);
    if (u < u_lo_) {
        // small-s regime: Phi'(t) ~ A t^{p-1} with A = (log c)^{alpha p}
        const double A = std::pow(std::log(c_), alpha_ * p_);
        const double pp = conjugate_exponent();
        return std::pow(s, pp) * std::pow(A, 1.0 - pp) / pp;
    }
    if (u > u_hi_) return complementary_direct(s);
    const double x = (u - u_lo_) / du_;
    std::size_t k = std::min(static_cast<std::size_t>(x), kTableSize - 2);
    const double w = x - static_cast<double>(k);
    const double h00 = (1.0 + 2.0 * w) * (1.0 - w) * (1.0 - w);
    const double h10 = w * (1.0 - w) * (1.0 - w);
    const double h01 = w * w * (3.0 - 2.0 * w);
    const double h11 = w * w * (w - 1.0);
    const double L = h00 * log_psi_[k] + h10 * du_ * dlog_psi_[k] +
                     h01 * log_psi_[k + 1] + h11 * du_ * dlog_psi_[k + 1];
    return std::exp(L);
}

double YoungFunction::inverse(double y) const {
    if (y < 0.0 || !std::isfinite(y)) throw DomainError("inverse: y must be >= 0 and finite");
    if (y == 0.0) return 0.0;
    double lo, hi;
    const double ly = std::log(y);
    if (ly <= log_phi_.front()) {
        const double lc = std::log(c_);
        double t = std::pow(p_ * y / std::pow(lc, alpha_ * p_), 1.0 / p_);
        lo = t * 0.5; hi = t * 2.0;
    } else if (ly >= log_phi_.back()) {
        double t = std::pow(p_ * y, 1.0 / p_);
        t = std::pow(p_ * y / std::pow(std::log(c_ + t), alpha_ * p_), 1.0 / p_);
        lo = t * 0.25; hi = t * 4.0;
    } else {
        auto it = std::lower_bound(log_phi_.begin(), log_phi_.end(), ly);
        const std::size_t k = static_cast<std::size_t>(it - log_phi_.begin());
        hi = std::exp(u_lo_ + du_ * static_cast<double>(k));
        lo = k > 0 ? std::exp(u_lo_ + du_ * static_cast<double>(k - 1)) : hi * 0.5;
    }
    while (eval(lo) > y) lo *= 0.5;
    while (eval(hi) < y) hi *= 2.0;
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double g = eval(t) - y;
        if (g > 0.0) hi = t; else lo = t;
        double tn = t - g / derivative(t);
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (std::abs(tn - t) <= 1e-15 * t) { t = tn; break; }
        t = tn;
    }
    return t;
}

double YoungFunction::fundamental(double t) const {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("fundamental: t must be > 0");
    return 1.0 / inverse(1.0 / t);
}

void YoungFunction::validate_convexity() const {
    // Phi' must be non-decreasing for Phi to be convex.
    double prev = 0.0;
    for (int i = 0; i <= 320; ++i) {
        const double t = std::pow(10.0, -8.0 + 0.05 * static_cast<double>(i));
        const double d = derivative(t);
        if (d < prev * (1.0 - 1e-12))
            throw DomainError("Phi is not convex for these (p, alpha, c)");
        prev = d;
    }
}

}  // namespace orlab
