#pragma once

#include "dsc/rootsys.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dsc {

// Signed chamber sum: sum over chambers C of eps(C0, C) psi_C(x, lambda).
long psi_R(const RootSystem& r, std::size_t c0, const RationalVector& x, const RationalVector& lambda);

// psi_R based at the chamber of x.  x regular, lambda R-regular.
long m_R(const RootSystem& r, const RationalVector& x, const RationalVector& lambda);

// Stable discrete series constant computed by recursion over walls: zero on chambers where
// lambda is positive somewhere, propagated across each wall through the wall system, with
// every wall of every chamber checked for consistency.  x and lambda regular; -1 in W.
long cbar(const RootSystem& r, const RationalVector& x, const RationalVector& lambda);
std::vector<long> cbar_table(const RootSystem& r, const RationalVector& lambda);

// Points inside the base chamber and its dual chamber: sum of fundamental coweights (weights)
// with coefficients jittered from the seed, redrawn until x0 is R^vee-regular and lambda0 is
// R-regular.
struct BasePoints {
    RationalVector x0, lambda0;
    std::uint64_t seed = 0;
};
BasePoints base_points(const RootSystem& r, std::uint64_t seed);

struct DTable {
    std::string system;
    std::size_t base_chamber = 0;
    BasePoints points;
    std::vector<long> values;  // indexed by Weyl group element
};

// d(w) = cbar(x0, w lambda0) and its analogue for the coroot system, with x0 in the base
// chamber c0 and lambda0 in the dual chamber.  Both need -1 in W.
DTable d_table(const RootSystem& r, std::size_t c0 = 0, std::uint64_t seed = 1);
DTable d_vee_table(const RootSystem& r, std::size_t c0 = 0, std::uint64_t seed = 1);

// Chamber sums twisted by a +-1 character: of the coroot lattice (values on simple coroots),
// with factor chi(delta_C - delta_C0); or of the root lattice, with factor chi(rho_C - rho_C0).
long twisted_sum_coroot(const RootSystem& r, std::size_t c0, const SignCharacter& chi, const RationalVector& x,
                        const RationalVector& lambda);
long twisted_sum_root(const RootSystem& r, std::size_t c0, const SignCharacter& chi, const RationalVector& x,
                      const RationalVector& lambda);
// Does chi extend to a +-1 character of the coweight (resp. weight) lattice?
bool coroot_character_lifts(const RootSystem& r, const SignCharacter& chi);
bool root_character_lifts(const RootSystem& r, const SignCharacter& chi);

struct BQuery {
    RationalVector tau;      // regular, in X*
    std::size_t chamber = 0;
    RationalVector x;        // R^vee-regular
    RationalVector lambda;   // in the W-orbit of tau
};

// Discrete series constant b_R(tau, C; x, lambda).
long b_constant(const RootSystem& r, const BQuery& q);

// Wall constant for Y = ker(alpha) with alpha in the closed dual chamber of C; y on Y (in X
// coordinates) and R_alpha^vee-regular.  b_sub sums over W_alpha directly; b_sub_via_wall
// evaluates b on the wall system at a suitable conjugate of tau.  Both give 0 when lambda is not
// in W_alpha W_C tau.
long b_sub(const RootSystem& r, const RationalVector& tau, std::size_t chamber, std::size_t alpha,
           const RationalVector& y, const RationalVector& lambda);
long b_sub_via_wall(const RootSystem& r, const RationalVector& tau, std::size_t chamber, std::size_t alpha,
                    const RationalVector& y, const RationalVector& lambda);

// Chambers C with R_C equal to the given set of roots (root indices, any order).
std::vector<std::size_t> chambers_with_compact_roots(const RootSystem& r, std::vector<std::size_t> compact);

// c(w, lambda, Delta+) = b(lambda, C; x, w lambda) with R_C = compact roots and x an R^vee-regular
// point of the chamber `positive_chamber` that defines Delta+.
long reindexed_constant(const RootSystem& r, const std::vector<std::size_t>& compact, std::size_t w,
             const RationalVector& lambda, std::size_t positive_chamber);

// An R^vee-regular point of chamber c, deterministic in the seed.
RationalVector coregular_point(const RootSystem& r, std::size_t c, std::uint64_t seed = 1);

}  // namespace dsc
