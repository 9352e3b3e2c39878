#include "dsc/parafan.hpp"

#include <algorithm>

namespace dsc {

namespace {

// The cell with signs `cell` lies in the closure of the cell with signs `chamber`.
bool compatible(const std::vector<int>& cell, const std::vector<int>& chamber) {
    for (std::size_t j = 0; j < cell.size(); ++j)
        if (cell[j] != 0 && cell[j] != chamber[j]) return false;
    return true;
}

bool in_dual_cone(const Cone& c, const RationalVector& mu) {
    for (const auto& g : c.rays())
        if (dot(g, mu) < 0) return false;
    for (const auto& g : c.lineality())
        if (dot(g, mu) != 0) return false;
    return true;
}

std::vector<std::size_t> checked_subset(const RootSystem& r, std::vector<std::size_t> J) {
    std::sort(J.begin(), J.end());
    if (std::adjacent_find(J.begin(), J.end()) != J.end())
        throw PreconditionError("levi subset: repeated simple root");
    for (auto j : J)
        if (j >= r.rank()) throw PreconditionError("levi subset: no simple root " + std::to_string(j + 1));
    return J;
}

std::string cone_label(const RootSystem& r, std::size_t w, const std::vector<std::size_t>& I) {
    std::string s = r.word(w);
    if (I.empty()) return s;
    s += "[";
    for (std::size_t k = 0; k < I.size(); ++k) s += (k ? "," : "") + std::to_string(I[k] + 1);
    return s + "]";
}

long dual_cone_sign(const FanCone& q, const RationalVector& form) { return in_dual_cone(q.cone, form) ? 1 : 0; }

}  // namespace

std::size_t LeviFan::find(const std::string& label) const {
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].label == label) return i;
    throw PreconditionError("no parabolic labelled '" + label + "' in the fan");
}

std::vector<std::size_t> LeviFan::containing(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < cones.size(); ++k)
        if (compatible(cones[k].signs, cones.at(i).signs)) out.push_back(k);
    return out;
}

std::vector<std::size_t> LeviFan::borels(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < system.order(); ++w)
        if (compatible(cones.at(i).signs, system.chamber_signs(w))) out.push_back(w);
    return out;
}

LeviFan levi_fan(const RootSystem& r, const std::vector<std::size_t>& J_in) {
    if (!r.spans()) throw PreconditionError("levi_fan: the roots must span X*");
    auto J = checked_subset(r, J_in);
    std::size_t n = r.dim();
    std::vector<RationalVector> eqs;
    for (auto j : J) eqs.push_back(r.roots()[r.simple()[j]]);
    auto space = annihilator(eqs, n);
    std::size_t m = space.size();

    std::vector<RationalVector> forms;
    for (const auto& a : r.roots()) {
        RationalVector f(m);
        for (std::size_t k = 0; k < m; ++k) f[k] = dot(a, space[k]);
        forms.push_back(f);
    }
    LeviFan fan{r, J, space, {}};
    for (const auto& t : arrangement_cells(m, forms)) {
        RationalVector x(n);
        for (std::size_t k = 0; k < m; ++k) x += t[k] * space[k];
        FanCone q{"", Cone::origin(n), {}, {}, {}, 0, {}, false};
        std::vector<RationalVector> ineqs, zero;
        for (std::size_t j = 0; j < r.root_count(); ++j) {
            int s = sign(dot(r.roots()[j], x));
            q.signs.push_back(s);
            if (s == 0) {
                q.levi_roots.push_back(j);
                zero.push_back(r.roots()[j]);
            } else {
                ineqs.push_back(s > 0 ? r.roots()[j] : -r.roots()[j]);
            }
        }
        q.cone = Cone::from_inequalities(n, ineqs, zero);
        q.levi_span = annihilator(zero, n);
        q.open = q.levi_span.size() == m;
        for (std::size_t w = 0; w < r.order(); ++w)
            if (compatible(q.signs, r.chamber_signs(w))) {
                q.chamber = w;
                break;
            }
        for (std::size_t i = 0; i < r.rank(); ++i)
            if (q.signs[r.element(q.chamber).root_perm[r.simple()[i]]] == 0) q.standard_levi.push_back(i);
        q.label = cone_label(r, q.chamber, q.standard_levi);
        fan.cones.push_back(std::move(q));
    }
    std::sort(fan.cones.begin(), fan.cones.end(), [](const FanCone& a, const FanCone& b) {
        if (a.levi_span.size() != b.levi_span.size()) return a.levi_span.size() > b.levi_span.size();
        if (a.chamber != b.chamber) return a.chamber < b.chamber;
        return a.standard_levi < b.standard_levi;
    });
    return fan;
}

std::vector<std::size_t> coset_reps_for(const RootSystem& r, const std::vector<std::size_t>& levi_roots,
                                        std::size_t borel) {
    const auto& pos = r.chamber_signs(borel);
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < r.order(); ++w) {
        const auto& inv = r.element(r.element(w).inverse).root_perm;
        bool ok = std::all_of(levi_roots.begin(), levi_roots.end(),
                              [&](std::size_t b) { return pos[b] < 0 || pos[inv[b]] > 0; });
        if (ok) out.push_back(w);
    }
    return out;
}

std::vector<std::size_t> coset_reps(const RootSystem& r, const std::vector<std::size_t>& J_L) {
    auto J = checked_subset(r, J_L);
    std::vector<std::size_t> gens;
    for (auto j : J) gens.push_back(r.simple()[j]);
    std::vector<RationalVector> vs;
    for (auto g : gens) vs.push_back(r.roots()[g]);
    std::size_t k = rank(vs, r.dim());
    std::vector<std::size_t> levi;
    for (std::size_t b = 0; b < r.root_count(); ++b) {
        vs.push_back(r.roots()[b]);
        if (rank(vs, r.dim()) == k) levi.push_back(b);
        vs.pop_back();
    }
    auto out = coset_reps_for(r, levi, 0);
    std::stable_sort(out.begin(), out.end(),
                     [&](std::size_t a, std::size_t b) { return r.element(a).length() < r.element(b).length(); });
    return out;
}

RationalVector levi_projection(const RootSystem& r, const std::vector<std::size_t>& levi_roots,
                               const RationalVector& mu) {
    std::vector<RationalVector> rs, cs;
    for (auto b : levi_roots) {
        rs.push_back(r.roots()[b]);
        cs.push_back(r.coroots()[b]);
    }
    auto rb = span_basis(rs, r.dim()), cb = span_basis(cs, r.dim());
    if (rb.empty()) return mu;
    // mu - sum c_j rb_j vanishes on every cb_i.
    RationalMatrix a(cb.size(), rb.size());
    RationalVector rhs(cb.size());
    for (std::size_t i = 0; i < cb.size(); ++i) {
        rhs[i] = dot(mu, cb[i]);
        for (std::size_t j = 0; j < rb.size(); ++j) a(i, j) = dot(rb[j], cb[i]);
    }
    auto c = solve_linear(a, rhs);
    if (!c) throw std::logic_error("levi_projection: singular pairing");
    RationalVector out = mu;
    for (std::size_t j = 0; j < rb.size(); ++j) out -= (*c)[j] * rb[j];
    return out;
}

std::vector<std::size_t> standardizing_elements(const LeviFan& fan, std::size_t cone) { return fan.borels(cone); }

RationalVector nu_restrict(const LeviFan& fan, std::size_t cone, const RationalVector& nu,
                           std::optional<std::size_t> via) {
    const auto& r = fan.system;
    const auto& q = fan.cones.at(cone);
    if (nu.size() != r.dim()) throw DimensionMismatch("nu_restrict");
    std::size_t w = via.value_or(q.chamber);
    if (!compatible(q.signs, r.chamber_signs(w)))
        throw PreconditionError("nu_restrict: " + r.word(w) + " does not conjugate " + q.label + " to a standard parabolic");
    return levi_projection(r, q.levi_roots, r.act_dual(w, nu));
}

RationalVector nu_middle(const RootSystem& r) { return -r.rho(0); }

NuSpec NuSpec::parse(const std::string& s) {
    if (s == "middle") return {Kind::middle, {}};
    if (s == "+inf" || s == "inf") return {Kind::plus_infinity, {}};
    if (s == "-inf") return {Kind::minus_infinity, {}};
    return {Kind::finite, parse_vector(s)};
}

VirtualWeightSum truncated_cohomology(const LeviFan& fan, std::size_t cone, const RationalVector& lambda,
                                      const NuSpec& nu, std::optional<std::size_t> borel) {
    const auto& r = fan.system;
    const auto& q = fan.cones.at(cone);
    if (lambda.size() != r.dim()) throw DimensionMismatch("truncated_cohomology");
    for (auto s : r.simple())
        if (dot(lambda, r.coroots()[s]) < 0)
            throw PreconditionError("truncated_cohomology: lambda is not dominant for the base chamber");
    std::size_t b = borel.value_or(q.chamber);
    if (!compatible(q.signs, r.chamber_signs(b)))
        throw PreconditionError("truncated_cohomology: the Borel of " + r.word(b) + " is not contained in " + q.label);

    std::optional<RationalVector> nu_p;
    if (nu.kind == NuSpec::Kind::finite) nu_p = nu_restrict(fan, cone, nu.value);
    if (nu.kind == NuSpec::Kind::middle) nu_p = nu_restrict(fan, cone, nu_middle(r));
    bool trivial_space = q.levi_span.empty();

    RationalVector rho_b = r.rho(b), shifted = r.act_dual(b, lambda) + rho_b;
    std::size_t b_inv = r.element(b).inverse;
    VirtualWeightSum out;
    for (auto w : coset_reps_for(r, q.levi_roots, b)) {
        RationalVector mu = r.act_dual(w, shifted) - rho_b;
        bool keep;
        switch (nu.kind) {
            case NuSpec::Kind::minus_infinity: keep = true; break;
            case NuSpec::Kind::plus_infinity: keep = trivial_space; break;
            default: keep = in_dual_cone(q.cone, levi_projection(r, q.levi_roots, mu) - *nu_p);
        }
        if (!keep) continue;
        std::size_t len = r.element(r.compose(b_inv, r.compose(w, b))).length();
        out.terms.push_back({r.element(w).sign(), mu, len, w});
    }
    std::stable_sort(out.terms.begin(), out.terms.end(),
                     [](const WeightTerm& a, const WeightTerm& c) { return a.length < c.length; });
    return out;
}

long fixed_point_weight_factor(const LeviFan& fan, std::size_t cone, const RationalVector& x,
                               const RationalVector& mu, const RationalVector& nu) {
    const auto& r = fan.system;
    const auto& q = fan.cones.at(cone);
    if (x.size() != r.dim() || mu.size() != r.dim()) throw DimensionMismatch("fixed_point_weight_factor");
    for (auto b : q.levi_roots)
        if (dot(r.roots()[b], x) != 0) throw PreconditionError("fixed_point_weight_factor: x is not in a_L of " + q.label);
    RationalVector form = levi_projection(r, q.levi_roots, mu) - nu_restrict(fan, cone, nu);
    long s = q.levi_span.size() % 2 ? -1 : 1;
    return s * phi(q.cone, -x, form);
}

bool fan_identity_check(const LeviFan& fan, const RationalVector& x, const RationalVector& mu,
                        const RationalVector& nu) {
    const auto& r = fan.system;
    std::size_t n = r.dim();
    for (std::size_t q1 = 0; q1 < fan.cones.size(); ++q1) {
        const auto& c1 = fan.cones[q1];
        bool in_span = std::all_of(c1.levi_roots.begin(), c1.levi_roots.end(),
                                   [&](std::size_t b) { return dot(r.roots()[b], x) == 0; });
        if (!in_span) continue;
        long lhs = 0;
        for (auto q : fan.containing(q1)) {
            const auto& c = fan.cones[q];
            auto gens = c1.cone.generators();
            for (const auto& v : c.levi_span) {
                gens.push_back(v);
                gens.push_back(-v);
            }
            if (!Cone::from_generators(n, gens).relint_contains(-x)) continue;
            long s = (c1.levi_span.size() - c.levi_span.size()) % 2 ? -1 : 1;
            lhs += s * dual_cone_sign(c, levi_projection(r, c.levi_roots, mu) - nu_restrict(fan, q, nu));
        }
        if (lhs != fixed_point_weight_factor(fan, q1, x, mu, nu)) return false;
    }
    return true;
}

}  // namespace dsc
