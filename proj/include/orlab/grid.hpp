#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace orlab {

using cplx = std::complex<double>;

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DomainKind { Interval, Torus };

/// A uniform sampling grid over [0, W) or the torus [-pi, pi).
/// Sample i sits at the midpoint of cell i, so the midpoint quadrature
/// rule is exact for functions constant on cells.
struct Domain {
    DomainKind kind = DomainKind::Interval;
    int width = 1;  // only meaningful for Interval

    double length() const {
        return kind == DomainKind::Torus ? 2.0 * std::numbers::pi
                                         : static_cast<double>(width);
    }
    double origin() const {
        return kind == DomainKind::Torus ? -std::numbers::pi : 0.0;
    }
    bool operator==(const Domain& o) const {
        return kind == o.kind && (kind == DomainKind::Torus || width == o.width);
    }
};

class GridFunction {
public:
    GridFunction() = default;
    GridFunction(Domain dom, std::size_t grid_size);
    GridFunction(Domain dom, std::vector<cplx> samples);

    static GridFunction torus(std::size_t grid_size) {
        return GridFunction({DomainKind::Torus, 0}, grid_size);
    }
    static GridFunction interval(int width, std::size_t grid_size) {
        return GridFunction({DomainKind::Interval, width}, grid_size);
    }

    const Domain& domain() const { return dom_; }
    std::size_t size() const { return samples_.size(); }
    double step() const { return step_; }
    double point(std::size_t i) const {
        return dom_.origin() + (static_cast<double>(i) + 0.5) * step_;
    }

    cplx& operator[](std::size_t i) { return samples_[i]; }
    const cplx& operator[](std::size_t i) const { return samples_[i]; }
    std::vector<cplx>& samples() { return samples_; }
    const std::vector<cplx>& samples() const { return samples_; }

    bool same_grid(const GridFunction& o) const {
        return dom_ == o.dom_ && samples_.size() == o.samples_.size();
    }

    bool all_finite() const;
    double sup_norm() const;
    double l2_norm() const;  // quadrature L2 norm

    /// Midpoint quadrature of the raw samples.
    cplx integral() const;

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(cplx a);

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(cplx a, GridFunction f) { return f *= a; }

private:
    Domain dom_{};
    double step_ = 0.0;
    std::vector<cplx> samples_;
};

bool is_power_of_two(std::size_t n);

}  // namespace orlab
