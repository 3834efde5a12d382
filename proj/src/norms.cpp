#include "orlab/norms.hpp"

#include <cmath>
#include <vector>

namespace orlab {

namespace {

std::vector<double> nonzero_moduli(const GridFunction& f) {
    if (!f.all_finite()) throw DomainError("non-finite samples");
    std::vector<double> m;
    m.reserve(f.size());
    for (const cplx& z : f.samples()) {
        const double a = std::abs(z);
        if (a > 0.0) m.push_back(a);
    }
    return m;
}

}  // namespace

double luxemburg_norm(const GridFunction& f, const YoungFunction& phi) {
    const std::vector<double> m = nonzero_moduli(f);
    if (m.empty()) return 0.0;
    const double step = f.step();
    double sup = 0.0;
    for (double a : m) sup = std::max(sup, a);

    auto excess = [&](double lam) {
        double s = 0.0;
        for (double a : m) s += phi.eval(a / lam);
        return s * step - 1.0;
    };

    // The objective is strictly decreasing in lambda; bracket then
    // run safeguarded Newton.
    double lam = sup / phi.inverse(1.0 / (static_cast<double>(m.size()) * step));
    double lo = lam, hi = lam;
    while (excess(hi) > 0.0) hi *= 2.0;
    while (excess(lo) < 0.0) lo *= 0.5;
    lam = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double g = excess(lam);
        if (g > 0.0) lo = lam; else hi = lam;
        double deriv = 0.0;
        for (double a : m) deriv -= phi.derivative(a / lam) * a;
        deriv *= step / (lam * lam);
        double next = lam - g / deriv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - lam) <= 1e-13 * lam) { lam = next; break; }
        lam = next;
    }
    return lam;
}

double orlicz_dual_norm(const GridFunction& g, const YoungFunction& phi) {
    const std::vector<double> m = nonzero_moduli(g);
    if (m.empty()) return 0.0;
    const double step = g.step();

    auto objective = [&](double k) {
        double s = 0.0;
        for (double a : m) s += phi.complementary(k * a);
        return (1.0 + s * step) / k;
    };

    // coarse scan over powers of two to bracket the unimodal minimum
    double best_k = 1.0, best_v = objective(1.0);
    for (int j = -50; j <= 50; ++j) {
        if (j == 0) continue;
        const double k = std::ldexp(1.0, j);
        const double v = objective(k);
        if (v < best_v) { best_v = v; best_k = k; }
    }
    double a = std::log(best_k) - std::numbers::ln2;
    double b = std::log(best_k) + std::numbers::ln2;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective(std::exp(x1)), f2 = objective(std::exp(x2));
    while (b - a > 1e-7) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = objective(std::exp(x1));
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = objective(std::exp(x2));
        }
    }
    return std::min(f1, f2);
}

FunctionalKernel norming_functional(const GridFunction& f, const YoungFunction& phi) {
    const double nf = luxemburg_norm(f, phi);
    if (nf == 0.0) throw UndefinedFunctionalError("norming functional of the zero function");
    const double p = phi.p(), ap = phi.alpha() * phi.p(), c = phi.c();

    FunctionalKernel kern{GridFunction(f.domain(), f.size()), nf};
    double A = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const cplx u = f[i] / nf;
        const double au = std::abs(u);
        if (au == 0.0) continue;
        const double w = std::pow(au, p - 2.0) * std::pow(std::log(c + au), ap);
        kern.base[i] = w * std::conj(u);
        A += w * au * au;
    }
    A *= f.step();
    for (std::size_t i = 0; i < f.size(); ++i) kern.base[i] /= A;
    return kern;
}

cplx pairing(const FunctionalKernel& kernel, const GridFunction& g) {
    if (!kernel.base.same_grid(g)) throw GridError("pairing: grid mismatch");
    cplx s{0.0, 0.0};
    const auto& k = kernel.base.samples();
    const auto& gs = g.samples();
    for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * gs[i];
    return s * kernel.base.step();
}

}  // namespace orlab
