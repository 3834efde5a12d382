#pragma once

#include <map>
#include <vector>

#include "orlab/norms.hpp"

namespace orlab {

struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class AtomFamily { Haar, Trig };

struct Atom {
    int id = 0;
    AtomFamily family = AtomFamily::Haar;
    int level = 0;   // Haar: |I| = 2^{-level}
    int offset = 0;  // Haar: I = [offset 2^{-level}, (offset+1) 2^{-level})
    int freq = 0;    // Trig: e^{i freq x}
    double norm_constant = 1.0;  // divisor that made the Luxemburg norm 1
};

/// A finite, normalized Haar or trigonometric dictionary together with
/// its biorthogonal dual family, rendered once on a fixed grid.
/// Immutable after construction.
class Dictionary {
public:
    static Dictionary build_haar(const YoungFunction& space, int width, int max_level,
                                 std::size_t grid_size);
    static Dictionary build_trig(const YoungFunction& space, int max_freq,
                                 std::size_t grid_size);

    std::size_t size() const { return atoms_.size(); }
    const Atom& atom(std::size_t i) const { return atoms_[i]; }
    const GridFunction& atom_fn(std::size_t i) const { return atom_fns_[i]; }
    const GridFunction& dual_fn(std::size_t i) const { return dual_fns_[i]; }
    const YoungFunction& space() const { return space_; }
    const Domain& domain() const { return dom_; }
    std::size_t grid_size() const { return grid_size_; }
    AtomFamily family() const { return family_; }

    /// Haar truncation depth or trig max frequency, as built.
    int truncation() const { return truncation_; }

    /// Cell range [begin, end) outside which atom i vanishes. Trig atoms
    /// cover the whole grid; Haar atoms are local.
    std::pair<std::size_t, std::size_t> support(std::size_t i) const {
        return supports_[i];
    }

    GridFunction synthesize(const std::map<int, cplx>& coefficients) const;

    /// Coefficient of f against the dual of atom i (the analysis pairing).
    cplx dual_coefficient(const GridFunction& f, std::size_t i) const;

private:
    Dictionary(YoungFunction space, Domain dom, std::size_t grid_size, AtomFamily fam,
               int truncation)
        : space_(std::move(space)), dom_(dom), grid_size_(grid_size), family_(fam),
          truncation_(truncation) {}

    YoungFunction space_;
    Domain dom_;
    std::size_t grid_size_;
    AtomFamily family_;
    int truncation_;
    std::vector<Atom> atoms_;
    std::vector<GridFunction> atom_fns_;
    std::vector<GridFunction> dual_fns_;
    std::vector<std::pair<std::size_t, std::size_t>> supports_;
};

/// Fundamental function phi(t) = 1 / Phi^{-1}(1/t).
double fundamental_function(const YoungFunction& space, double t);

/// Upper democracy function of the dual system at cardinality N: max over
/// single-scale candidate sets A (same-level disjoint packs for Haar,
/// frequency blocks and lacunary packs for trig) of || sum_{j in A} dual_j ||
/// in the dual space.  Single-scale sets realize the fundamental-function
/// ratio sup_s phi(Ns)/phi(s) that characterizes Orlicz democracy; mixing
/// scales only perturbs the constant at finite N.
double democracy_estimate(const Dictionary& dict, int N);

/// D_N(x) = sum_{|n| <= N} e^{inx} on the torus, alias-free.
GridFunction dirichlet_kernel(int N, std::size_t grid_size);

}  // namespace orlab
