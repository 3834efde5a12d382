#include "orlab/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace orlab {

Dictionary Dictionary::build_haar(const YoungFunction& space, int width, int max_level,
                                  std::size_t grid_size) {
    if (width <= 0) throw DomainError("width must be positive");
    if (max_level < 0) throw DomainError("max_level must be >= 0");
    if (!is_power_of_two(grid_size) || grid_size % static_cast<std::size_t>(width) != 0)
        throw ResolutionError("grid_size must be a power of two divisible by width");
    const std::size_t cells_per_unit = grid_size / static_cast<std::size_t>(width);
    if (!is_power_of_two(cells_per_unit) ||
        cells_per_unit < (std::size_t{1} << (max_level + 1)))
        throw ResolutionError("grid too coarse for the requested Haar depth");

    Dictionary d(space, Domain{DomainKind::Interval, width}, grid_size,
                 AtomFamily::Haar, max_level);
    int id = 0;
    for (int j = 0; j <= max_level; ++j) {
        const int count = width << j;                       // intervals at level j
        const std::size_t cells = cells_per_unit >> j;      // cells per interval
        for (int k = 0; k < count; ++k) {
            GridFunction shape(d.dom_, grid_size);
            const std::size_t begin = static_cast<std::size_t>(k) * cells;
            for (std::size_t i = 0; i < cells; ++i)
                shape[begin + i] = (i < cells / 2) ? 1.0 : -1.0;

            const double nc = luxemburg_norm(shape, space);
            GridFunction atom = (1.0 / nc) * shape;
            GridFunction dual = (1.0 / orlicz_dual_norm(shape, space)) * shape;
            const cplx bi = (atom.step() * [&] {
                cplx s{};
                for (std::size_t i = 0; i < grid_size; ++i) s += atom[i] * dual[i];
                return s;
            }());
            dual *= 1.0 / bi;

            d.atoms_.push_back({id, AtomFamily::Haar, j, k, 0, nc});
            d.atom_fns_.push_back(std::move(atom));
            d.dual_fns_.push_back(std::move(dual));
            d.supports_.push_back({begin, begin + cells});
            ++id;
        }
    }
    return d;
}

Dictionary Dictionary::build_trig(const YoungFunction& space, int max_freq,
                                  std::size_t grid_size) {
    if (max_freq < 0) throw DomainError("max_freq must be >= 0");
    if (!is_power_of_two(grid_size))
        throw ResolutionError("grid_size must be a power of two");
    if (static_cast<std::size_t>(max_freq) * 4 > grid_size)
        throw ResolutionError("max_freq > grid_size/4 would alias");

    Dictionary d(space, Domain{DomainKind::Torus, 0}, grid_size, AtomFamily::Trig,
                 max_freq);
    // All atoms share the norm of the constant-modulus function 1.
    GridFunction one(d.dom_, grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) one[i] = 1.0;
    const double nc = luxemburg_norm(one, space);
    const double dual_nc = orlicz_dual_norm(one, space);

    int id = 0;
    auto add = [&](int n) {
        GridFunction atom(d.dom_, grid_size);
        GridFunction dual(d.dom_, grid_size);
        for (std::size_t i = 0; i < grid_size; ++i) {
            const double x = atom.point(i);
            atom[i] = std::polar(1.0 / nc, n * x);
            dual[i] = std::polar(1.0 / dual_nc, -n * x);
        }
        const cplx bi = (atom.step() * [&] {
            cplx s{};
            for (std::size_t i = 0; i < grid_size; ++i) s += atom[i] * dual[i];
            return s;
        }());
        dual *= 1.0 / bi;
        d.atoms_.push_back({id, AtomFamily::Trig, 0, 0, n, nc});
        d.atom_fns_.push_back(std::move(atom));
        d.dual_fns_.push_back(std::move(dual));
        d.supports_.push_back({0, grid_size});
        ++id;
    };
    add(0);
    for (int n = 1; n <= max_freq; ++n) { add(n); add(-n); }
    return d;
}

GridFunction Dictionary::synthesize(const std::map<int, cplx>& coefficients) const {
    GridFunction f(dom_, grid_size_);
    for (const auto& [id, a] : coefficients) {
        const std::size_t idx = static_cast<std::size_t>(id);
        const GridFunction& phi = atom_fns_.at(idx);
        const auto [b, e] = supports_.at(idx);
        for (std::size_t i = b; i < e; ++i) f[i] += a * phi[i];
    }
    return f;
}

cplx Dictionary::dual_coefficient(const GridFunction& f, std::size_t i) const {
    const GridFunction& d = dual_fns_.at(i);
    const auto [b, e] = supports_.at(i);
    cplx s{};
    for (std::size_t k = b; k < e; ++k) s += f[k] * d[k];
    return s * f.step();
}

double fundamental_function(const YoungFunction& space, double t) {
    return space.fundamental(t);
}

double democracy_estimate(const Dictionary& dict, int N) {
    if (N < 1 || static_cast<std::size_t>(N) > dict.size())
        throw DomainError("democracy_estimate: N out of range");

    auto dual_sum_norm = [&](const std::vector<std::size_t>& ids) {
        GridFunction g(dict.domain(), dict.grid_size());
        for (std::size_t idx : ids) {
            const GridFunction& d = dict.dual_fn(idx);
            for (std::size_t i = 0; i < g.size(); ++i) g[i] += d[i];
        }
        return orlicz_dual_norm(g, dict.space());
    };

    double best = 0.0;
    if (dict.family() == AtomFamily::Haar) {
        // one candidate per scale: up to N disjoint same-level atoms
        for (std::size_t start = 0; start < dict.size();) {
            const int lvl = dict.atom(start).level;
            std::vector<std::size_t> ids;
            for (std::size_t i = start; i < dict.size() && dict.atom(i).level == lvl &&
                                        ids.size() < static_cast<std::size_t>(N); ++i)
                ids.push_back(i);
            best = std::max(best, dual_sum_norm(ids));
            while (start < dict.size() && dict.atom(start).level == lvl) ++start;
        }
    } else {
        // leading frequency block
        std::vector<std::size_t> ids;
        for (int k = 0; k < N; ++k) ids.push_back(static_cast<std::size_t>(k));
        best = std::max(best, dual_sum_norm(ids));
        // lacunary frequencies 2^j
        ids.clear();
        for (std::size_t i = 0; i < dict.size() && ids.size() < static_cast<std::size_t>(N); ++i)
            if (const int n = dict.atom(i).freq; n > 0 && (n & (n - 1)) == 0)
                ids.push_back(i);
        if (!ids.empty()) best = std::max(best, dual_sum_norm(ids));
    }
    return best;
}

GridFunction dirichlet_kernel(int N, std::size_t grid_size) {
    if (N < 0) throw DomainError("dirichlet_kernel: N must be >= 0");
    if (static_cast<std::size_t>(N) * 4 > grid_size)
        throw ResolutionError("dirichlet_kernel: N > grid_size/4 would alias");
    GridFunction f = GridFunction::torus(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double x = f.point(i);
        cplx s{1.0, 0.0};
        for (int n = 1; n <= N; ++n) s += 2.0 * std::cos(n * x);
        f[i] = s;
    }
    return f;
}

}  // namespace orlab
