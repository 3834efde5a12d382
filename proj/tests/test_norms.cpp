#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "orlab/norms.hpp"

using namespace orlab;

namespace {

GridFunction random_fn(const Domain& dom, std::size_t n, std::mt19937_64& rng) {
    GridFunction f(dom, n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) f[i] = {gauss(rng), gauss(rng)};
    return f;
}

}  // namespace

TEST_CASE("indicator norm equals the fundamental function") {
    // ||1_E||_Phi = 1/Phi^{-1}(1/|E|) for any Young function.
    const std::vector<std::pair<double, double>> spaces = {
        {1.5, -1.0}, {1.5, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {3.0, 2.0}};
    const std::size_t grid = 2048;
    for (const auto& [p, a] : spaces) {
        const YoungFunction phi(p, a);
        for (int cells : {64, 256, 1024, 2048}) {
            GridFunction f = GridFunction::interval(8, grid);
            for (int i = 0; i < cells; ++i) f[static_cast<std::size_t>(i)] = 1.0;
            const double measure = cells * f.step();
            CHECK(luxemburg_norm(f, phi) ==
                  doctest::Approx(phi.fundamental(measure)).epsilon(1e-8));
        }
    }
}

TEST_CASE("quadratic case is the scaled L2 norm") {
    // p = 2, alpha = 0: Phi(t) = t^2/2, so ||f||_Phi = ||f||_2 / sqrt(2).
    const YoungFunction phi(2.0, 0.0);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const GridFunction f = random_fn({DomainKind::Interval, 4}, 512, rng);
        CHECK(luxemburg_norm(f, phi) ==
              doctest::Approx(f.l2_norm() / std::sqrt(2.0)).epsilon(1e-9));
    }
}

TEST_CASE("norm axioms") {
    const YoungFunction phi(1.5, 1.0);
    std::mt19937_64 rng(7);
    const Domain dom{DomainKind::Interval, 2};
    for (int trial = 0; trial < 10; ++trial) {
        const GridFunction f = random_fn(dom, 256, rng);
        const GridFunction g = random_fn(dom, 256, rng);
        const double nf = luxemburg_norm(f, phi), ng = luxemburg_norm(g, phi);
        CHECK(nf > 0.0);
        CHECK(luxemburg_norm(cplx{-2.5, 0.0} * f, phi) ==
              doctest::Approx(2.5 * nf).epsilon(1e-9));
        CHECK(luxemburg_norm(f + g, phi) <= nf + ng + 1e-9 * (nf + ng));
    }
    CHECK(luxemburg_norm(GridFunction(dom, 256), phi) == 0.0);
}

TEST_CASE("unit ball membership at the norm") {
    // integral Phi(|f| / ||f||) == 1 for nonzero f (norm attained).
    const YoungFunction phi(3.0, 2.0);
    std::mt19937_64 rng(3);
    const GridFunction f = random_fn({DomainKind::Torus, 0}, 512, rng);
    const double nf = luxemburg_norm(f, phi);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += phi.eval(std::abs(f[i]) / nf);
    CHECK(acc * f.step() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dual norm closed form in the Hilbert case") {
    // p = 2, alpha = 0: Psi(s) = s^2/2 and the Orlicz norm of g is
    // sqrt(2) ||g||_2 (dual to ||.||_2/sqrt(2)).
    const YoungFunction phi(2.0, 0.0);
    std::mt19937_64 rng(5);
    const GridFunction g = random_fn({DomainKind::Interval, 1}, 256, rng);
    CHECK(orlicz_dual_norm(g, phi) ==
          doctest::Approx(std::sqrt(2.0) * g.l2_norm()).epsilon(1e-6));
}

TEST_CASE("Hoelder inequality between the norms") {
    // |int f g| <= ||f||_Phi ||g||_Psi on random pairs.
    for (const auto& [p, a] : std::vector<std::pair<double, double>>{
             {1.5, 0.0}, {2.0, 1.0}, {3.0, -1.0}}) {
        const YoungFunction phi(p, a);
        std::mt19937_64 rng(17);
        const Domain dom{DomainKind::Interval, 2};
        for (int trial = 0; trial < 50; ++trial) {
            const GridFunction f = random_fn(dom, 128, rng);
            const GridFunction g = random_fn(dom, 128, rng);
            cplx ip{};
            for (std::size_t i = 0; i < f.size(); ++i) ip += f[i] * g[i];
            const double lhs = std::abs(ip) * f.step();
            CHECK(lhs <= luxemburg_norm(f, phi) * orlicz_dual_norm(g, phi) * (1 + 1e-8));
        }
    }
}

TEST_CASE("norming functional contract") {
    // F_f(f) = ||f|| and ||F_f||* = 1, across all spaces in play.
    const std::vector<std::pair<double, double>> spaces = {
        {1.5, -1.0}, {1.5, 0.0}, {2.0, 1.0}, {3.0, 0.0}, {3.0, 2.0}};
    std::mt19937_64 rng(23);
    for (const auto& [p, a] : spaces) {
        const YoungFunction phi(p, a);
        for (int trial = 0; trial < 20; ++trial) {
            const GridFunction f = random_fn({DomainKind::Interval, 2}, 256, rng);
            const double nf = luxemburg_norm(f, phi);
            const FunctionalKernel K = norming_functional(f, phi);
            CHECK(std::abs(pairing(K, f)) == doctest::Approx(nf).epsilon(1e-6));
            CHECK(orlicz_dual_norm(K.base, phi) == doctest::Approx(1.0).epsilon(1e-3));
        }
    }
}

TEST_CASE("functional of zero is undefined") {
    const YoungFunction phi(2.0, 0.0);
    CHECK_THROWS_AS(norming_functional(GridFunction::interval(1, 64), phi),
                    UndefinedFunctionalError);
}
