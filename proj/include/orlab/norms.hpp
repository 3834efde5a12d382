#pragma once

#include "orlab/grid.hpp"
#include "orlab/young.hpp"

namespace orlab {

/// Luxemburg norm inf{ lambda > 0 : integral Phi(|f|/lambda) <= 1 }.
/// Returns 0 for f == 0.
double luxemburg_norm(const GridFunction& f, const YoungFunction& phi);

/// Orlicz norm of g in the dual space L^Psi via the Amemiya
/// representation inf_{k>0} (1 + integral Psi(k|g|)) / k.
double orlicz_dual_norm(const GridFunction& g, const YoungFunction& phi);

/// Discretized norming functional of a nonzero f in L^Phi: the kernel
/// K = P(f/||f||) / A(f/||f||) with P(z) = |z|^{p-2} zbar (log(c+|z|))^{alpha p},
/// so that pairing(K, g) realizes F_f(g) and pairing(K, f) = ||f||.
/// The conjugate sits inside the kernel; pairing is plain integration.
struct FunctionalKernel {
    GridFunction base;
    double norm_of_source = 0.0;
};

struct UndefinedFunctionalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

FunctionalKernel norming_functional(const GridFunction& f, const YoungFunction& phi);

/// step * sum K_i g_i.
cplx pairing(const FunctionalKernel& kernel, const GridFunction& g);

}  // namespace orlab
