#include "orlab/grid.hpp"

#include <cmath>

namespace orlab {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

GridFunction::GridFunction(Domain dom, std::size_t grid_size)
    : dom_(dom), samples_(grid_size, cplx{0.0, 0.0}) {
    if (grid_size == 0 || !is_power_of_two(grid_size))
        throw GridError("grid_size must be a positive power of two");
    if (dom.kind == DomainKind::Interval && dom.width <= 0)
        throw GridError("interval width must be positive");
    step_ = dom.length() / static_cast<double>(grid_size);
}

GridFunction::GridFunction(Domain dom, std::vector<cplx> samples)
    : GridFunction(dom, samples.size()) {
    samples_ = std::move(samples);
}

bool GridFunction::all_finite() const {
    for (const cplx& z : samples_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double GridFunction::sup_norm() const {
    double m = 0.0;
    for (const cplx& z : samples_) m = std::max(m, std::abs(z));
    return m;
}

double GridFunction::l2_norm() const {
    double s = 0.0;
    for (const cplx& z : samples_) s += std::norm(z);
    return std::sqrt(s * step_);
}

cplx GridFunction::integral() const {
    cplx s{0.0, 0.0};
    for (const cplx& z : samples_) s += z;
    return s * step_;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    if (!same_grid(o)) throw GridError("grid mismatch");
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += o.samples_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    if (!same_grid(o)) throw GridError("grid mismatch");
    for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] -= o.samples_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(cplx a) {
    for (cplx& z : samples_) z *= a;
    return *this;
}

}  // namespace orlab
