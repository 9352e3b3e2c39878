#pragma once

#include "dsc/ratgeom.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace dsc {

class Cone;

// A face of a cone, described by the parent's rays it contains and the parent's facets
// that vanish on it.  The lineality space of the parent is always included.
struct Face {
    std::vector<std::size_t> rays;
    std::vector<std::size_t> active_facets;
    std::size_t dim = 0;
};

// Polyhedral cone in Q^n, stored in canonical form:
//   lineality  - RREF basis of the lineality space L
//   rays       - primitive integer extreme rays, orthogonal to L, sorted
//   equations  - RREF basis of the forms vanishing on span(C)
//   facets     - primitive facet forms, orthogonal to the equations, sorted
// A point x is in C iff e.x = 0 for all equations and f.x >= 0 for all facets.
class Cone {
public:
    static Cone from_generators(std::size_t dim, const std::vector<RationalVector>& gens);
    static Cone from_inequalities(std::size_t dim, const std::vector<RationalVector>& ineqs,
                                  const std::vector<RationalVector>& eqs = {});
    static Cone whole_space(std::size_t dim);
    static Cone origin(std::size_t dim);
    static Cone orthant(std::size_t dim);

    std::size_t ambient_dim() const { return d_->n; }
    std::size_t dim() const { return d_->n - d_->equations.size(); }
    std::size_t lineality_dim() const { return d_->lineality.size(); }
    const std::vector<RationalVector>& lineality() const { return d_->lineality; }
    const std::vector<RationalVector>& rays() const { return d_->rays; }
    const std::vector<RationalVector>& equations() const { return d_->equations; }
    const std::vector<RationalVector>& facets() const { return d_->facets; }

    // Lineality vectors with both signs, then rays.
    std::vector<RationalVector> generators() const;
    // Facets, then equations with both signs.
    std::vector<RationalVector> inequalities() const;

    bool is_subspace() const { return d_->rays.empty(); }
    bool is_pointed() const { return d_->lineality.empty(); }
    // Pointed with linearly independent rays.
    bool is_simplicial() const;

    bool contains(const RationalVector& x) const;
    bool relint_contains(const RationalVector& x) const;

    Cone dual() const;
    Cone negated() const;

    // All faces, from C itself downwards; cached and shared between copies.
    const std::vector<Face>& faces() const;
    Cone face_cone(const Face& f) const;
    // The cone C + span(F).
    Cone plus_span(const Face& f) const;
    bool in_face_relint(const Face& f, const RationalVector& x) const;

    std::string key() const;
    friend bool operator==(const Cone& a, const Cone& b) { return a.key() == b.key(); }

private:
    struct Data {
        std::size_t n = 0;
        std::vector<RationalVector> lineality, rays, equations, facets;
        std::string key;
        mutable std::once_flag faces_once;
        mutable std::vector<Face> faces;
    };
    explicit Cone(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    static Cone from_vrep(std::size_t n, std::vector<RationalVector> lin, std::vector<RationalVector> rays);

    std::shared_ptr<const Data> d_;
};

namespace detail {
struct VRep {
    std::vector<RationalVector> lineality;
    std::vector<RationalVector> rays;
};
// Double description: generators of {x in Q^n : a.x >= 0 for all a in ineqs}.
VRep double_description(std::size_t n, const std::vector<RationalVector>& ineqs);
}  // namespace detail

// psi_C(x, lambda) = sum over faces F of (-1)^dim F [x in C + span F] [lambda in F^*].
long psi(const Cone& c, const RationalVector& x, const RationalVector& lambda);
long psi_face_sum(const Cone& c, const RationalVector& x, const RationalVector& lambda);
// The same for the relative interior of C.
long phi(const Cone& c, const RationalVector& x, const RationalVector& lambda);
long phi_face_sum(const Cone& c, const RationalVector& x, const RationalVector& lambda);

// Closed-form evaluation in simplicial coordinates: a = coordinates of x in the ray basis,
// b = values of lambda on the rays.
long psi_simplicial(const std::vector<Rational>& a, const std::vector<Rational>& b);
long phi_simplicial(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Finite integer combination of cone indicator functions.
class ConicFunction {
public:
    explicit ConicFunction(std::size_t dim) : n_(dim) {}
    static ConicFunction indicator(const Cone& c, long coeff = 1);
    static ConicFunction relint_indicator(const Cone& c);
    static ConicFunction zero(std::size_t dim) { return ConicFunction(dim); }

    std::size_t ambient_dim() const { return n_; }
    void add(const Cone& c, long coeff);
    const std::map<std::string, std::pair<Cone, long>>& terms() const { return terms_; }
    bool is_trivially_zero() const { return terms_.empty(); }

    long evaluate(const RationalVector& x) const;

    // Duality on conic functions: xi_C -> (-1)^dim C xi_{relint C}.
    ConicFunction star() const;
    // Fourier-type transform into the dual space: xi_C -> (-1)^(n - dim C*) xi_{relint C*}.
    ConicFunction wedge() const;

    ConicFunction& operator+=(const ConicFunction& o);
    ConicFunction& operator-=(const ConicFunction& o);
    friend ConicFunction operator+(ConicFunction a, const ConicFunction& b) { return a += b; }
    friend ConicFunction operator-(ConicFunction a, const ConicFunction& b) { return a -= b; }
    friend ConicFunction operator*(long c, ConicFunction a);

private:
    std::size_t n_;
    std::map<std::string, std::pair<Cone, long>> terms_;
};

// Exact equality of conic functions: refine the arrangement of all defining hyperplanes and
// compare on one relative-interior point of every cell.
bool conic_equal(const ConicFunction& f, const ConicFunction& g);
// Relative-interior sample points, one per cell of the arrangement of the given hyperplanes.
std::vector<RationalVector> arrangement_cells(std::size_t n, const std::vector<RationalVector>& forms);

// Dual cone inside a subspace S (given by a basis) for the inner product gram:
// {z in S : (z, w) >= 0 for all w in k}.
Cone dual_within(const Cone& k, const std::vector<RationalVector>& subspace, const RationalMatrix& gram);

struct NearestFace {
    std::size_t face;
    RationalVector point;
};
// The unique face F with x in relint F + (-F^perp), F^perp taken with respect to gram.
NearestFace nearest_face(const Cone& c, const RationalVector& x, const RationalMatrix& gram);
// sum_F psi_{C+span F}(-y, -p_{span F^perp}(x)) [p_{span F}(x) in relint F]; equals
// (-1)^dim C [y in relint C].
long nearest_face_expansion(const Cone& c, const RationalVector& x, const RationalVector& y, const RationalMatrix& gram);

}  // namespace dsc
