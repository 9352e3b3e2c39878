#pragma once

#include "dsc/rootsys.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dsc {

// Split model: a_0 = X, parabolics containing the torus are cells of the root arrangement.
// Points of a_L live in X; forms on a_L are represented by their unique lift to X* that
// vanishes on the coroots of L.

struct FanCone {
    std::string label;                   // "<word>" or "<word>[i,j]"; see levi_fan
    Cone cone;                           // closure of C_Q in X
    std::vector<RationalVector> levi_span;  // basis of a_L = span C_Q
    std::vector<std::size_t> levi_roots;    // R_L: roots vanishing on a_L
    std::vector<int> signs;              // sign of each root on C_Q
    std::size_t chamber = 0;             // shortest w with C_Q in the closure of w C0
    std::vector<std::size_t> standard_levi;  // I with Q = w Q_I w^-1, 0-based simple indices
    bool open = false;                   // Q in P(M)
};

struct LeviFan {
    RootSystem system;
    std::vector<std::size_t> levi_subset;   // J, 0-based simple indices
    std::vector<RationalVector> space;      // basis of a_M
    std::vector<FanCone> cones;

    std::size_t find(const std::string& label) const;
    // Parabolics Q containing the parabolic of cone i (faces of its closure), including i.
    std::vector<std::size_t> containing(std::size_t i) const;
    // Chambers w C0 whose Borel lies in the parabolic of cone i.
    std::vector<std::size_t> borels(std::size_t i) const;
};

// The fan of a_M for M the standard Levi of J.  Cones are sorted by decreasing dimension, then by
// chamber, then by standard Levi.  The label of Q = w Q_I w^-1 (w shortest) is the word of w,
// followed by the 1-based indices of I in brackets when I is not empty.
LeviFan levi_fan(const RootSystem& r, const std::vector<std::size_t>& J);

// Minimal coset representatives of W_L \ W for the standard Levi of J_L, relative to the base
// Borel, sorted by length then index.
std::vector<std::size_t> coset_reps(const RootSystem& r, const std::vector<std::size_t>& J_L);
// {w : w^-1(R_L+) in R+} with positivity taken on the given chamber.
std::vector<std::size_t> coset_reps_for(const RootSystem& r, const std::vector<std::size_t>& levi_roots,
                                          std::size_t borel);

// Restriction X* -> a_L^*, as the lift vanishing on the coroots in levi_roots.
RationalVector levi_projection(const RootSystem& r, const std::vector<std::size_t>& levi_roots,
                               const RationalVector& mu);

// nu_Q: transport of nu restricted to the standard conjugate of Q.  `via` picks the conjugating
// chamber (any of fan.borels-style chambers w with C_Q in the closure of w C0); default the
// shortest.
RationalVector nu_restrict(const LeviFan& fan, std::size_t cone, const RationalVector& nu,
                           std::optional<std::size_t> via = {});
// Chambers w with w^-1 Q standard.
std::vector<std::size_t> standardizing_elements(const LeviFan& fan, std::size_t cone);

// -rho_0 of the base chamber (no central part).
RationalVector nu_middle(const RootSystem& r);

struct NuSpec {
    enum class Kind { finite, middle, plus_infinity, minus_infinity };
    Kind kind = Kind::finite;
    RationalVector value;

    // "middle", "+inf", "-inf" or a comma-separated vector.
    static NuSpec parse(const std::string& s);
};

struct WeightTerm {
    int sign = 1;
    RationalVector weight;   // w(lambda_B + rho_B) - rho_B in X*
    std::size_t length = 0;  // length of w for the Borel B
    std::size_t element = 0;
};

struct VirtualWeightSum {
    std::vector<WeightTerm> terms;
};

// E^nu_P: cohomology weights w(lambda_B+rho_B)-rho_B with sign eps(w), kept when p(weight) - nu_P lies in
// the dual cone of C_P.  lambda is dominant for the base chamber; B defaults to the shortest
// chamber whose Borel lies in P.
VirtualWeightSum truncated_cohomology(const LeviFan& fan, std::size_t cone, const RationalVector& lambda,
                                      const NuSpec& nu, std::optional<std::size_t> borel = {});

// (-1)^dim a_L * phi_{C_Q}(-x, p_L(mu) - nu_Q), x in a_L.
long fixed_point_weight_factor(const LeviFan& fan, std::size_t cone, const RationalVector& x,
                             const RationalVector& mu, const RationalVector& nu);

// For every Q1 in the fan with x in a_L1: the signed sum over Q containing Q1 with
// -x in C_Q1 + a_L of [p_L(mu) - nu_Q in C_Q^*] equals (-1)^dim a_L1 phi_Q1(-x, p_L1(mu) - nu_Q1).
bool fan_identity_check(const LeviFan& fan, const RationalVector& x, const RationalVector& mu,
                        const RationalVector& nu);

}  // namespace dsc
