#pragma once

#include "dsc/cones.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace dsc {

class UnsupportedType : public std::invalid_argument {
public:
    explicit UnsupportedType(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a construction needs -1 in the Weyl group and it is absent.
class MinusOneNotInWeylGroup : public PreconditionError {
public:
    explicit MinusOneNotInWeylGroup(const std::string& what) : PreconditionError(what) {}
};

// Cap on accepted rank: RANK_LIMIT from the environment, 4 by default.
std::size_t default_rank_limit();

struct WeylElement {
    RationalMatrix matrix;       // action on X
    RationalMatrix dual_matrix;  // action on X*, transpose-inverse of matrix
    std::vector<std::size_t> word;       // shortlex-first reduced word, 0-based simple indices
    std::vector<std::size_t> root_perm;  // w(root i) = root root_perm[i]
    std::size_t inverse = 0;

    std::size_t length() const { return word.size(); }
    int sign() const { return word.size() % 2 ? -1 : 1; }
};

struct WallSystem;

// A finite root system (X, X*, R, R^vee) in coordinates: X = X* = Q^dim with the dot product
// as pairing.  Roots need not span X*; then X0 (the common kernel of the roots) is the
// lineality space of every chamber.
//
// Chambers are indexed like the Weyl group: chamber i is w_i C0 for the base chamber C0.
class RootSystem {
public:
    static RootSystem from_type(std::string_view type, std::size_t rank_limit = default_rank_limit());
    // cartan[i][j] = <alpha_i^vee, alpha_j>.  Roots are written in the simple-root basis of X*,
    // points of X in the dual basis (fundamental coweights).
    static RootSystem from_cartan(const std::vector<std::vector<long>>& cartan, std::string label);
    static RootSystem from_roots(std::size_t dim, std::vector<RationalVector> roots,
                                 std::vector<RationalVector> coroots, std::vector<bool> positive,
                                 std::string label);
    static RootSystem empty(std::size_t dim);

    const std::string& label() const { return d_->label; }
    const std::string& key() const { return d_->key; }
    std::size_t dim() const { return d_->n; }
    std::size_t rank() const { return d_->simple.size(); }
    bool spans() const { return rank() == dim(); }
    std::size_t root_count() const { return d_->roots.size(); }
    const std::vector<RationalVector>& roots() const { return d_->roots; }
    const std::vector<RationalVector>& coroots() const { return d_->coroots; }
    bool is_positive(std::size_t r) const { return d_->positive[r]; }
    const std::vector<bool>& positive_flags() const { return d_->positive; }
    std::size_t positive_count() const { return d_->roots.size() / 2; }
    const std::vector<std::size_t>& simple() const { return d_->simple; }
    std::size_t negative_of(std::size_t r) const { return d_->negative_of[r]; }
    std::optional<std::size_t> find_root(const RationalVector& alpha) const;
    std::optional<std::size_t> find_coroot(const RationalVector& coroot) const;
    // Basis of X0 = common kernel of the roots.
    const std::vector<RationalVector>& lineality() const { return d_->lineality; }
    // omega_i in span(R^vee) with alpha_j(omega_i) = delta_ij, one per simple root.
    const std::vector<RationalVector>& fundamental_coweights() const { return d_->coweights; }

    RootSystem dual() const;

    // Weyl group.
    std::size_t order() const { return d_->W.size(); }
    const WeylElement& element(std::size_t w) const { return d_->W[w]; }
    std::size_t compose(std::size_t a, std::size_t b) const;  // the product a*b, b applied first
    std::size_t simple_reflection(std::size_t i) const { return d_->simple_refl[i]; }
    std::size_t reflection(std::size_t root) const;
    std::optional<std::size_t> find_element(const RationalMatrix& m) const;
    std::string word(std::size_t w) const;  // "e" or "s1*s2", 1-based
    std::size_t from_word(std::string_view word) const;
    RationalVector act(std::size_t w, const RationalVector& x) const { return d_->W[w].matrix * x; }
    RationalVector act_dual(std::size_t w, const RationalVector& l) const { return d_->W[w].dual_matrix * l; }
    std::size_t longest() const { return d_->longest; }
    bool minus_one_in_W() const { return d_->minus_one; }
    // (|R+| + rank)/2; requires -1 in W.
    std::size_t q() const;
    // Elements of the subgroup generated by the reflections in the given roots.
    std::vector<std::size_t> reflection_subgroup(const std::vector<std::size_t>& roots) const;

    // Chambers.
    std::size_t chamber_count() const { return d_->W.size(); }
    const std::vector<int>& chamber_signs(std::size_t c) const { return d_->chamber_signs[c]; }
    std::size_t chamber_of(const RationalVector& x) const;
    std::optional<std::size_t> chamber_from_signs(const std::vector<int>& signs) const;
    std::size_t length(std::size_t c1, std::size_t c2) const;
    int epsilon(std::size_t c1, std::size_t c2) const { return length(c1, c2) % 2 ? -1 : 1; }
    // Simple roots (as root indices) and fundamental coweights of chamber c.
    std::vector<std::size_t> chamber_simple_roots(std::size_t c) const;
    std::vector<RationalVector> chamber_rays(std::size_t c) const;
    // Interior point of chamber c (image of the base point).
    RationalVector chamber_point(std::size_t c) const { return act(c, d_->x_ref); }
    Cone chamber_cone(std::size_t c) const;
    // Chamber adjacent to c across its wall in root r (r must be a wall of c).
    std::size_t across(std::size_t c, std::size_t r) const;
    RationalVector delta(std::size_t c) const;  // half-sum of coroots positive on c
    RationalVector rho(std::size_t c) const;    // half-sum of roots positive on c

    // psi of the closed chamber c, via the simplicial closed form (reduced modulo X0).
    long chamber_psi(std::size_t c, const RationalVector& x, const RationalVector& lambda) const;
    // chamber_psi for every chamber at once.
    std::vector<long> chamber_psi_values(const RationalVector& x, const RationalVector& lambda) const;

    bool is_regular(const RationalVector& x) const;
    bool is_R_regular(const RationalVector& lambda) const;
    bool is_Rvee_regular(const RationalVector& x) const;
    // Primitive generators of all 1-dimensional faces of closed chambers, modulo X0.
    const std::vector<RationalVector>& ray_orbit() const { return d_->ray_orbit; }

    // W-invariant positive definite forms: (x,y) = sum alpha(x) alpha(y) on X, dually on X*.
    RationalMatrix invariant_form() const;
    RationalMatrix dual_invariant_form() const;

    // Wall system on Y = ker(root r): roots of R vanishing on r's coroot, restricted to Y.
    const WallSystem& wall_system(std::size_t r) const;

private:
    struct Data {
        std::string label, key;
        std::size_t n = 0;
        std::vector<RationalVector> roots, coroots;
        std::vector<bool> positive;
        std::vector<std::size_t> simple, negative_of, simple_refl;
        std::vector<RationalVector> coweights, lineality;
        RationalVector x_ref;
        std::vector<WeylElement> W;
        std::map<RationalVector, std::size_t> by_image;
        std::map<RationalVector, std::size_t> root_index, coroot_index;
        std::vector<std::vector<int>> chamber_signs;
        std::map<std::vector<int>, std::size_t> chamber_index;
        std::vector<RationalVector> ray_orbit;
        std::vector<RationalVector> ray_vectors;                 // distinct w(omega_i)
        std::vector<std::vector<std::size_t>> chamber_ray_ids;  // per chamber, index into ray_vectors
        std::size_t longest = 0;
        bool minus_one = false;
        mutable std::mutex cache_mutex;
        mutable std::shared_ptr<const RootSystem> dual;
        mutable std::map<std::size_t, std::shared_ptr<const WallSystem>> walls;
    };
    explicit RootSystem(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

// A root subsystem living on the same X, with the base chamber containing a given parent chamber.
struct Subsystem {
    RootSystem system;
    std::vector<std::size_t> parent_roots;

    // The subsystem chamber containing parent chamber c (the map C -> C~).
    std::size_t coarsen(const RootSystem& parent, std::size_t c) const;
};

// Root system on Y = ker(alpha), in coordinates of a basis of Y.
struct WallSystem {
    RootSystem system;
    std::vector<std::size_t> parent_roots;
    std::vector<RationalVector> basis;  // basis of Y, in X coordinates
    RationalMatrix basis_matrix;        // columns = basis

    RationalVector to_local(const RationalVector& y) const;
    RationalVector from_local(const RationalVector& y) const;
    RationalVector restrict_form(const RationalVector& lambda) const;
    // The chamber C~ cap Y of the wall system, for a parent chamber c.
    std::size_t chamber_below(const RootSystem& parent, std::size_t c) const;
};

Subsystem make_subsystem(const RootSystem& r, const std::vector<std::size_t>& roots, std::size_t base_chamber,
                         const std::string& label);
// R_omega = {alpha : alpha(omega) = 0} for omega on a 1-dimensional chamber face.
Subsystem subsystem_omega(const RootSystem& r, const RationalVector& omega, std::size_t base_chamber);
// R_s for a +-1 character of the coroot lattice (values on the simple coroots).
Subsystem subsystem_sign_coroot(const RootSystem& r, const SignCharacter& chi, std::size_t base_chamber);
// R_a for a +-1 character of the root lattice (values on the simple roots).
Subsystem subsystem_sign_root(const RootSystem& r, const SignCharacter& chi, std::size_t base_chamber);
// R_C = {alpha : alpha(delta_C) even}.
Subsystem subsystem_two(const RootSystem& r, std::size_t chamber);
WallSystem make_wall_system(const RootSystem& r, std::size_t root);

// Value of a coroot-lattice character on an arbitrary coroot, and the root-lattice analogue.
int coroot_character(const RootSystem& r, const SignCharacter& chi, std::size_t root);
int root_character(const RootSystem& r, const SignCharacter& chi, std::size_t root);
// Lattice bases in X (coroot and coweight lattices) and X* (root and weight lattices).
std::vector<RationalVector> simple_coroots(const RootSystem& r);
std::vector<RationalVector> simple_roots(const RootSystem& r);
std::vector<RationalVector> fundamental_weights(const RootSystem& r);

}  // namespace dsc
