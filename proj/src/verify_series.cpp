#include "dsc/parafan.hpp"
#include "dsc/verify.hpp"

#include <set>
#include <tuple>

namespace dsc::detail {

namespace {

std::vector<std::vector<std::size_t>> all_subsets(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

std::string subset_string(const std::vector<std::size_t>& J) {
    std::string s = "{";
    for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i] + 1);
    return s + "}";
}

RationalVector point_of(const LeviFan& fan, Rng& rng, long bound) {
    RationalVector x(fan.system.dim());
    for (const auto& b : fan.space) x += Rational(rng.integer(-bound, bound)) * b;
    return x;
}

}  // namespace

void levi_fans(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&) {
    auto r = RootSystem::from_type(system);
    auto subsets = all_subsets(r.rank());
    std::vector<LeviFan> fans;
    for (const auto& J : subsets) fans.push_back(levi_fan(r, J));

    for (std::size_t i = 0; i < subsets.size(); ++i) {
        const auto& J = subsets[i];
        const auto& fan = fans[i];
        auto in = [&] { return "J=" + subset_string(J); };
        auto sum = ConicFunction::zero(r.dim());
        for (const auto& c : fan.cones) sum += ConicFunction::relint_indicator(c.cone);
        std::vector<RationalVector> gens;
        for (const auto& b : fan.space) {
            gens.push_back(b);
            gens.push_back(-b);
        }
        rec.truth(conic_equal(sum, ConicFunction::indicator(Cone::from_generators(r.dim(), gens))), "fan-partition", in);

        std::vector<std::size_t> simple;
        for (auto j : J) simple.push_back(r.simple()[j]);
        auto WL = r.reflection_subgroup(simple);
        auto reps = coset_reps(r, J);
        rec.equal(static_cast<long>(reps.size() * WL.size()), static_cast<long>(r.order()), "coset-count", in);
        std::set<std::size_t> minima;
        for (std::size_t w = 0; w < r.order(); ++w) {
            std::size_t best = w;
            for (auto u : WL) {
                std::size_t v = r.compose(u, w);
                if (r.element(v).length() < r.element(best).length()) best = v;
            }
            minima.insert(best);
        }
        rec.truth(std::set<std::size_t>(reps.begin(), reps.end()) == minima, "coset-minima", in);
    }

    // The alternating sum over parabolics equals the cone factor.
    if (r.rank() == 1) {
        for (long x : {-1, 0, 1})
            for (long m : {-1, 0, 1})
                for (long nu : {-2, 0, 2}) {
                    RationalVector xv{x}, mu{m + nu}, nv{nu};
                    rec.truth(fan_identity_check(fans[0], xv, mu, nv), "fan-identity/sign-patterns", [&] {
                        return "x=" + to_string(xv) + " mu=" + to_string(mu) + " nu=" + to_string(nv);
                    });
                }
    }
    const std::size_t count = cases ? cases : 200;
    for (std::size_t k = 0; k < count; ++k) {
        std::size_t i = static_cast<std::size_t>(rng.integer(0, static_cast<long>(fans.size()) - 1));
        const auto& fan = fans[i];
        RationalVector x = k % 4 == 0 ? RationalVector(r.dim()) : point_of(fan, rng, 2);
        if (k % 4 == 1) x = Rational(1, 3) * point_of(fan, rng, 5);
        auto mu = k % 2 ? rng.integer_vector(r.dim(), 2) : rng.vector(r.dim(), 3, 2);
        auto nu = k % 2 ? rng.integer_vector(r.dim(), 2) : rng.vector(r.dim(), 3, 2);
        rec.truth(fan_identity_check(fan, x, mu, nu), "fan-identity", [&] {
            return "J=" + subset_string(subsets[i]) + " x=" + to_string(x) + " mu=" + to_string(mu) +
                   " nu=" + to_string(nu);
        });
    }

    // Truncated cohomology.
    RationalVector lambda(r.dim());
    for (std::size_t i = 0; i < r.rank(); ++i) lambda += Rational(rng.integer(0, 3)) * fundamental_weights(r)[i];
    const auto& fan = fans[0];
    for (std::size_t p = 0; p < fan.cones.size(); ++p) {
        const auto& c = fan.cones[p];
        auto in = [&] { return "P=" + c.label + " lambda=" + to_string(lambda); };
        auto full = truncated_cohomology(fan, p, lambda, NuSpec::parse("-inf"));
        auto reps = coset_reps_for(r, c.levi_roots, c.chamber);
        rec.equal(static_cast<long>(full.terms.size()), static_cast<long>(reps.size()), "untruncated-term-count", in);
        std::multiset<std::pair<int, RationalVector>> got, expect;
        for (const auto& t : full.terms) got.insert({t.sign, t.weight});
        // Brute force over W: w^-1 keeps the roots of L positive for the Borel of c.chamber.
        const auto& pos = r.chamber_signs(c.chamber);
        auto rb = r.rho(c.chamber);
        RationalVector shifted = r.act_dual(c.chamber, lambda) + rb;
        for (std::size_t w = 0; w < r.order(); ++w) {
            const auto& perm = r.element(r.element(w).inverse).root_perm;
            bool minimal = true;
            for (auto b : c.levi_roots)
                if (pos[b] > 0 && pos[perm[b]] < 0) minimal = false;
            if (minimal) expect.insert({r.element(w).sign(), r.act_dual(w, shifted) - rb});
        }
        rec.truth(got == expect, "untruncated-kostant-sum", in);
        auto top = truncated_cohomology(fan, p, lambda, NuSpec::parse("+inf"));
        rec.equal(static_cast<long>(top.terms.size()), c.levi_span.empty() ? 1 : 0, "very-positive-truncation", in);
        if (c.levi_span.empty() && top.terms.size() == 1)
            rec.truth(top.terms[0].sign == 1 && top.terms[0].weight == lambda, "very-positive-truncation/weight", in);

        std::multiset<std::tuple<int, RationalVector, std::size_t>> ref;
        auto borels = fan.borels(p);
        for (std::size_t b : borels) {
            std::multiset<std::tuple<int, RationalVector, std::size_t>> seen;
            for (const auto& t : truncated_cohomology(fan, p, lambda, NuSpec::parse("-inf"), b).terms)
                seen.insert({t.sign, levi_projection(r, c.levi_roots, t.weight), t.length});
            if (b == borels.front()) ref = seen;
            else rec.truth(seen == ref, "borel-independence", [&] { return in() + " B=" + r.word(b); });
        }
    }

    if (r.rank() == 1 && r.dim() == 1) {
        std::size_t p = fan.find("e");
        for (long m = 0; m < 5; ++m) {
            Rational half(m, 2);
            half.canonicalize();
            RationalVector l{half};
            auto mid = truncated_cohomology(fan, p, l, NuSpec::parse("middle"));
            rec.truth(mid.terms.size() == 1 && mid.terms[0].sign == 1 && mid.terms[0].weight == l,
                      "middle-truncation", [&] { return "lambda=" + to_string(l); });
            auto all = truncated_cohomology(fan, p, l, NuSpec::parse("-inf"));
            rec.truth(all.terms.size() == 2 && all.terms[1].sign == -1 && all.terms[1].weight == RationalVector{-half - 1},
                      "middle-truncation/untruncated", [&] { return "lambda=" + to_string(l); });
        }
    }
}

void discrete_series(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&) {
    auto r = RootSystem::from_type(system);
    if (!r.minus_one_in_W()) return;
    auto tau = base_points(r, 5).lambda0;
    const std::size_t order = r.order();
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1)); };

    rec.equal(b_constant(RootSystem::empty(0), {RationalVector{}, 0, RationalVector{}, RationalVector{}}), 1,
              "empty-system", [] { return std::string("rank 0"); });

    auto describe = [&](std::size_t c, const RationalVector& x, const RationalVector& l) {
        return "tau=" + to_string(tau) + " C=" + r.word(c) + " x=" + to_string(x) + " lambda=" + to_string(l);
    };

    // Properties at a single (C, x, lambda).
    auto properties = [&](std::size_t c, const RationalVector& x, const RationalVector& l, bool all_w) {
        long b = b_constant(r, {tau, c, x, l});
        auto in = [&] { return describe(c, x, l); };
        for (auto c2 : chambers_with_compact_roots(r, subsystem_two(r, c).parent_roots))
            rec.equal(b_constant(r, {tau, c2, x, l}), b, "same-compact-roots", [&] { return in() + " C'=" + r.word(c2); });
        std::vector<std::size_t> ws;
        if (all_w) {
            for (std::size_t w = 0; w < order; ++w) ws.push_back(w);
        } else {
            ws = {pick(order), pick(order), pick(order)};
        }
        for (auto w : ws) {
            auto win = [&] { return in() + " w=" + r.word(w); };
            rec.equal(b_constant(r, {r.act_dual(w, tau), r.compose(w, c), x, l}), b, "conjugate-parameters", win);
            rec.equal(b_constant(r, {tau, c, r.act(w, x), r.act_dual(w, l)}), b, "conjugate-arguments", win);
        }
        bool nonpositive = true;
        for (const auto& ray : r.chamber_rays(r.chamber_of(x))) nonpositive = nonpositive && dot(l, ray) <= 0;
        if (!nonpositive) rec.equal(b, 0, "support", in);
        return b;
    };

    // The wall relation for Y = ker(alpha), x in chamber cx adjacent to Y.
    auto wall = [&](std::size_t a, std::size_t c, std::size_t cx, std::size_t u) {
        const auto& ws = r.wall_system(a);
        std::size_t s = r.reflection(a);
        RationalVector x, x2, y;
        do {
            auto p = random_Rvee_regular(r, rng);
            x = r.act(r.compose(cx, r.element(r.chamber_of(p)).inverse), p);
            x2 = r.act(s, x);
            y = Rational(1, 2) * (x + x2);
        } while (!r.is_Rvee_regular(x2) || !ws.system.is_Rvee_regular(ws.to_local(y)));
        auto lam = r.act_dual(u, tau), slam = r.act_dual(s, lam);
        auto in = [&] { return describe(c, x, lam) + " alpha=" + to_string(r.roots()[a]) + " x'=" + to_string(x2); };
        long lhs = b_constant(r, {tau, c, x, lam}) + b_constant(r, {tau, c, x2, lam});
        rec.equal(lhs, b_constant(r, {tau, c, x, lam}) + b_constant(r, {tau, c, x, slam}), "wall-relation/reflected-form", in);
        long s1 = b_sub(r, tau, c, a, y, lam), s2 = b_sub(r, tau, c, a, y, slam);
        rec.equal(b_sub_via_wall(r, tau, c, a, y, lam), s1, "wall-relation/wall-system", in);
        rec.equal(lhs, s1 + s2, "wall-relation", in);
    };
    auto admissible = [&](std::size_t a, std::size_t c) {
        for (std::size_t j = 0; j < r.root_count(); ++j)
            if (r.chamber_signs(c)[j] > 0 && dot(r.roots()[a], r.coroots()[j]) < 0) return false;
        return true;
    };

    const bool exhaustive = order <= 8 && !cases;
    if (exhaustive) {
        for (std::size_t c = 0; c < order; ++c)
            for (std::size_t cx = 0; cx < order; ++cx) {
                auto x = coregular_point(r, cx, 1 + cx);
                for (std::size_t u = 0; u < order; ++u) properties(c, x, r.act_dual(u, tau), true);
            }
        for (std::size_t a = 0; a < r.root_count(); ++a)
            for (std::size_t c = 0; c < order; ++c) {
                if (!admissible(a, c)) continue;
                for (std::size_t cx = 0; cx < order; ++cx) {
                    if (!is_wall(r, cx, a)) continue;
                    for (std::size_t u = 0; u < order; ++u) wall(a, c, cx, u);
                }
            }
    } else {
        std::size_t count = cases ? cases : (r.rank() <= 2 ? 100 : 20);
        for (std::size_t k = 0; k < count; ++k) {
            properties(pick(order), random_Rvee_regular(r, rng), r.act_dual(pick(order), tau), false);
            std::size_t a, c, cx;
            do {
                a = pick(r.root_count());
                c = pick(order);
            } while (!admissible(a, c));
            do cx = pick(order);
            while (!is_wall(r, cx, a));
            wall(a, c, cx, pick(order));
        }
    }

    // Constancy on Weyl chambers: compare R^vee-chambers lying in the same Weyl chamber.
    std::vector<std::vector<RationalVector>> by_chamber(order);
    for (const auto& p : arrangement_cells(r.dim(), r.dual().ray_orbit()))
        if (r.is_Rvee_regular(p)) by_chamber[r.chamber_of(p)].push_back(p);
    const std::size_t trials = exhaustive ? order : (cases ? cases : 10);
    for (std::size_t k = 0; k < trials; ++k) {
        std::size_t c = exhaustive ? k : pick(order);
        auto lam = r.act_dual(exhaustive ? (k * 3) % order : pick(order), tau);
        for (const auto& pts : by_chamber) {
            if (pts.size() < 2) continue;
            long ref = b_constant(r, {tau, c, pts.front(), lam});
            for (std::size_t i = 1; i < pts.size(); ++i)
                rec.equal(b_constant(r, {tau, c, pts[i], lam}), ref, "weyl-chamber-constancy",
                          [&] { return describe(c, pts[i], lam) + " x0=" + to_string(pts.front()); });
        }
    }
}

}  // namespace dsc::detail
