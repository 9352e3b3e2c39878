#include "dsc/verify.hpp"

namespace dsc::detail {

namespace {

long parity(std::size_t k) { return k % 2 ? -1 : 1; }

std::string pair_inputs(const Cone& c, const RationalVector& x, const RationalVector& l) {
    return "cone=" + c.key() + " x=" + to_string(x) + " lambda=" + to_string(l);
}

Cone random_cone(Rng& rng, std::size_t n) {
    std::vector<RationalVector> g;
    auto k = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) + 2));
    for (std::size_t i = 0; i < k; ++i) g.push_back(rng.integer_vector(n, 2));
    // Occasionally a line, so subspaces and cones with lineality show up.
    if (!g.empty() && rng.integer(0, 4) == 0) g.push_back(-g.front());
    return Cone::from_generators(n, g);
}

std::vector<RationalVector> random_basis(Rng& rng, std::size_t n) {
    std::vector<RationalVector> g;
    do {
        g.clear();
        for (std::size_t i = 0; i < n; ++i) g.push_back(rng.integer_vector(n, 3));
    } while (rank(g, n) < n);
    return g;
}

Cone random_full_cone(Rng& rng, std::size_t n, bool pointed) {
    for (;;) {
        std::vector<RationalVector> g;
        auto k = static_cast<std::size_t>(rng.integer(static_cast<long>(n), static_cast<long>(n) + 2));
        for (std::size_t i = 0; i < k; ++i) g.push_back(rng.integer_vector(n, 3));
        auto c = Cone::from_generators(n, g);
        if (c.dim() == n && (!pointed || c.is_pointed()) && !c.is_subspace()) return c;
    }
}

RationalMatrix random_gram(Rng& rng, std::size_t n) {
    auto a = RationalMatrix::from_rows(random_basis(rng, n), n);
    return a.transpose() * a;
}

// Positive combination of the generators, landing in the relative interior.
RationalVector relint_point(const Cone& c, Rng& rng) {
    RationalVector p(c.ambient_dim());
    for (const auto& g : c.generators()) p += Rational(rng.integer(1, 4)) * g;
    return p;
}

// Coordinates of v in the given independent vectors (v must lie in their span).
RationalVector coords(const std::vector<RationalVector>& basis, const RationalVector& v) {
    auto c = solve_linear(RationalMatrix::from_columns(basis, v.size()), v);
    if (!c) throw PreconditionError("vector outside the span");
    return *c;
}

Cone face_closure(std::size_t n, const std::vector<RationalVector>& forms, const RationalVector& p) {
    std::vector<RationalVector> ineqs, eqs;
    for (const auto& f : forms) {
        int s = sign(dot(f, p));
        if (s > 0) ineqs.push_back(f);
        else if (s < 0) ineqs.push_back(-f);
        else eqs.push_back(f);
    }
    return Cone::from_inequalities(n, ineqs, eqs);
}

// Closed-form values on a simplicial cone: index sets of nonnegative (or positive) coordinates of
// x against nonnegative values of lambda on the rays.
long simplicial_oracle(const Cone& c, const RationalVector& x, const RationalVector& l, bool open) {
    auto a = coords(c.rays(), x);
    long s = 1;
    for (std::size_t i = 0; i < c.rays().size(); ++i) {
        bool in_x = open ? a[i] > 0 : a[i] >= 0;
        bool in_l = dot(l, c.rays()[i]) >= 0;
        if (in_x == in_l) return 0;
        if (in_l) s = -s;
    }
    return s;
}

ConicFunction random_conic_function(Rng& rng, std::size_t n) {
    ConicFunction f(n);
    auto k = rng.integer(1, 3);
    for (long i = 0; i < k; ++i) {
        long coeff = rng.integer(1, 2) * (rng.coin() ? 1 : -1);
        f.add(random_cone(rng, n), coeff);
    }
    return f;
}

bool regular_for(const Cone& c, const RationalVector& x) {
    for (const auto& e : c.equations())
        if (dot(e, x) != 0) return true;
    for (const auto& f : c.facets())
        if (dot(f, x) == 0) return false;
    return true;
}

std::vector<RationalVector> face_basis(const Cone& c, const Face& f) {
    return span_basis(c.face_cone(f).generators(), c.ambient_dim());
}

Rational form(const RationalMatrix& gram, const RationalVector& u, const RationalVector& v) { return dot(u, gram * v); }

}  // namespace

void cone_valuations(const std::string&, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&) {
    const std::size_t count = cases ? cases : 100;

    for (std::size_t t = 0; t < count; ++t) {
        std::size_t n = 1 + t % 4;
        auto c = Cone::from_generators(n, random_basis(rng, n));
        for (int k = 0; k < 5; ++k) {
            auto x = rng.integer_vector(n, 3), l = rng.integer_vector(n, 3);
            auto in = [&] { return pair_inputs(c, x, l); };
            long closed = simplicial_oracle(c, x, l, false), open = simplicial_oracle(c, x, l, true);
            rec.equal(psi_face_sum(c, x, l), closed, "simplicial-closed-form/definition", in);
            rec.equal(psi(c, x, l), closed, "simplicial-closed-form/fast", in);
            rec.equal(phi_face_sum(c, x, l), open, "simplicial-open-form/definition", in);
            rec.equal(phi(c, x, l), open, "simplicial-open-form/fast", in);
        }
    }

    for (std::size_t t = 0; t < count; ++t) {
        std::size_t n = 1 + t % 4;
        auto c = random_cone(rng, n);
        for (int k = 0; k < 3; ++k) {
            auto x = rng.integer_vector(n, 2), l = rng.integer_vector(n, 2);
            auto in = [&] { return pair_inputs(c, x, l); };
            rec.equal(psi(c.dual(), l, x), parity(n) * psi(c, x, l), "dual-swap", in);

            // Reduction to span(C) modulo the lineality space.
            if (rng.coin()) {
                x = RationalVector(n);
                for (const auto& g : c.generators()) x += Rational(rng.integer(-2, 2)) * g;
            }
            if (rng.coin()) {
                auto ann = annihilator(c.lineality(), n);
                l = RationalVector(n);
                for (const auto& a : ann) l += Rational(rng.integer(-2, 2)) * a;
            }
            std::vector<RationalVector> rows = c.equations();
            for (const auto& v : c.lineality()) rows.push_back(v);
            auto comp = rows.empty() ? span_basis({}, n) : kernel_basis(RationalMatrix::from_rows(rows, n));
            if (rows.empty())
                for (std::size_t i = 0; i < n; ++i) comp.push_back(RationalVector::unit(n, i));
            bool in_span = true;
            for (const auto& e : c.equations()) in_span = in_span && dot(e, x) == 0;
            bool kills = true;
            for (const auto& v : c.lineality()) kills = kills && dot(l, v) == 0;
            long expected = 0;
            if (in_span && kills) {
                std::size_t k2 = comp.size();
                if (k2 == 0) {
                    expected = parity(c.lineality_dim());
                } else {
                    auto full = comp;
                    for (const auto& v : c.lineality()) full.push_back(v);
                    auto cut = [&](const RationalVector& v) {
                        auto a = coords(full, v);
                        return RationalVector(std::vector<Rational>(a.begin(), a.begin() + static_cast<long>(k2)));
                    };
                    std::vector<RationalVector> gens;
                    for (const auto& ray : c.rays()) gens.push_back(cut(ray));
                    RationalVector lt(k2);
                    for (std::size_t i = 0; i < k2; ++i) lt[i] = dot(l, comp[i]);
                    expected = parity(c.lineality_dim()) * psi(Cone::from_generators(k2, gens), cut(x), lt);
                }
            }
            rec.equal(psi(c, x, l), expected, "span-reduction", in);
        }
    }

    for (std::size_t t = 0; t < count; ++t) {
        std::size_t n = 1 + t % 3;
        auto c = random_cone(rng, n);
        auto in = [&] { return "cone=" + c.key(); };
        long euler = 0;
        ConicFunction faces(n);
        for (const auto& f : c.faces()) {
            euler += parity(f.dim);
            faces.add(c.face_cone(f), parity(f.dim));
        }
        rec.equal(euler, c.is_subspace() ? parity(c.dim()) : 0, "face-euler-characteristic", in);
        rec.truth(conic_equal(ConicFunction::relint_indicator(c), parity(c.dim()) * faces), "relint-expansion", in);
        std::vector<RationalVector> forms = c.facets();
        for (const auto& e : c.equations()) forms.push_back(e);
        for (const auto& p : arrangement_cells(n, forms)) {
            long sum = 0;
            for (const auto& f : c.faces())
                if (c.face_cone(f).contains(p)) sum += parity(f.dim);
            rec.equal(parity(c.dim()) * sum, c.relint_contains(p) ? 1 : 0, "relint-expansion/pointwise",
                      [&] { return "cone=" + c.key() + " x=" + to_string(p); });
        }

        // Cutting by a hyperplane.
        RationalVector h;
        do h = rng.integer_vector(n, 2);
        while (h.is_zero());
        auto ineq = c.facets();
        auto plus_ineq = ineq, minus_ineq = ineq;
        plus_ineq.push_back(h);
        minus_ineq.push_back(-h);
        auto zero_eq = c.equations();
        zero_eq.push_back(h);
        auto rel = ConicFunction::indicator(c) + ConicFunction::indicator(Cone::from_inequalities(n, ineq, zero_eq)) -
                   ConicFunction::indicator(Cone::from_inequalities(n, plus_ineq, c.equations())) -
                   ConicFunction::indicator(Cone::from_inequalities(n, minus_ineq, c.equations()));
        auto zero = ConicFunction::zero(n);
        auto cin = [&] { return "cone=" + c.key() + " hyperplane=" + to_string(h); };
        rec.truth(conic_equal(rel, zero), "cut-relation", cin);
        rec.truth(conic_equal(rel.star(), zero), "cut-relation/star", cin);
        rec.truth(conic_equal(rel.wedge(), zero), "cut-relation/wedge", cin);

        rec.truth(conic_equal(ConicFunction::relint_indicator(c).wedge(),
                              ConicFunction::indicator(c.dual().negated(), parity(c.dim()))),
                  "relint-transform", in);
        ConicFunction dual_faces(n);
        for (const auto& f : c.faces()) dual_faces.add(c.face_cone(f).dual(), parity(f.dim));
        rec.truth(conic_equal(dual_faces, parity(n - c.dual().dim()) *
                                              ConicFunction::relint_indicator(c.dual().negated())),
                  "dual-face-sum", in);

        auto f = random_conic_function(rng, n);
        rec.truth(conic_equal(f.star().star(), f), "involution/star", in);
        rec.truth(conic_equal(f.wedge().star().wedge().star(), f), "involution/wedge-star", in);
    }

    // Crossing one wall in the point variable, and one wall of the dual cone in the form variable.
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t n = 2 + t % 3;
        auto c = random_full_cone(rng, n, false);
        const auto& facets = c.facets();
        const auto& f = facets[static_cast<std::size_t>(rng.integer(0, static_cast<long>(facets.size()) - 1))];
        auto e = kernel_basis(RationalMatrix::from_rows({f}, n));
        RationalVector y;
        for (bool ok = false; !ok;) {
            y = RationalVector(n);
            for (const auto& b : e) y += rng.rational(4, 3) * b;
            ok = true;
            for (const auto& g : facets)
                if (g != f && dot(g, y) == 0) ok = false;
        }
        Rational step = 1;
        for (const auto& g : facets) {
            Rational gv = dot(g, f);
            if (g != f && gv != 0) step = std::min<Rational>(step, abs(dot(g, y) / gv) / 2);
        }
        RationalVector x = y + step * f, x2 = y - step * f;
        auto l = rng.integer_vector(n, 3);
        std::vector<RationalVector> wall_gens;
        for (const auto& g : c.generators())
            if (dot(f, g) == 0) wall_gens.push_back(coords(e, g));
        RationalVector ly(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) ly[i] = dot(l, e[i]);
        rec.equal(psi(c, x, l) - psi(c, x2, l), psi(Cone::from_generators(n - 1, wall_gens), coords(e, y), ly),
                  "point-wall-crossing",
                  [&] { return pair_inputs(c, x, l) + " x'=" + to_string(x2); });
    }

    for (std::size_t t = 0; t < count; ++t) {
        std::size_t n = 2 + t % 3;
        auto c = random_full_cone(rng, n, true);
        const auto& rays = c.rays();
        const auto& om = rays[static_cast<std::size_t>(rng.integer(0, static_cast<long>(rays.size()) - 1))];
        auto e = kernel_basis(RationalMatrix::from_rows({om}, n));
        RationalVector coeff(e.size()), mid;
        for (bool ok = false; !ok;) {
            mid = RationalVector(n);
            for (std::size_t i = 0; i < e.size(); ++i) {
                coeff[i] = rng.rational(4, 3);
                mid += coeff[i] * e[i];
            }
            ok = true;
            for (const auto& r : rays)
                if (r != om && dot(mid, r) == 0) ok = false;
        }
        Rational step = 1;
        for (const auto& r : rays) {
            Rational rv = dot(om, r);
            if (r != om && rv != 0) step = std::min<Rational>(step, abs(dot(mid, r) / rv) / 2);
        }
        RationalVector l = mid + step * om, l2 = mid - step * om;
        auto x = rng.integer_vector(n, 3);
        auto image = [&](const RationalVector& v) {
            RationalVector out(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) out[i] = dot(e[i], v);
            return out;
        };
        std::vector<RationalVector> gens;
        for (const auto& r : rays) gens.push_back(image(r));
        rec.equal(psi(c, x, l) - psi(c, x, l2), -psi(Cone::from_generators(n - 1, gens), image(x), coeff),
                  "form-wall-crossing",
                  [&] { return pair_inputs(c, x, l) + " lambda'=" + to_string(l2); });
    }

    // Subdividing the relative interior.
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t n = 2 + t % 2;
        auto c = random_cone(rng, n);
        std::vector<RationalVector> forms = c.facets();
        for (const auto& e : c.equations()) forms.push_back(e);
        std::vector<RationalVector> cuts;
        for (long k = rng.integer(1, 2); k > 0; --k) {
            RationalVector h;
            do h = rng.integer_vector(n, 2);
            while (h.is_zero());
            forms.push_back(h);
            cuts.push_back(h);
        }
        std::vector<Cone> pieces;
        for (const auto& p : arrangement_cells(n, forms))
            if (c.relint_contains(p)) pieces.push_back(face_closure(n, forms, p));
        ConicFunction sum(n);
        for (const auto& p : pieces) sum += ConicFunction::relint_indicator(p);
        auto in = [&] {
            std::vector<std::string> hs;
            for (const auto& h : cuts) hs.push_back(to_string(h));
            return "cone=" + c.key() + " cuts=" + join(hs);
        };
        rec.truth(conic_equal(sum, ConicFunction::relint_indicator(c)), "subdivision/partition", in);
        for (int k = 0; k < 5; ++k) {
            auto x = rng.integer_vector(n, 2), l = rng.integer_vector(n, 2);
            long rhs = 0;
            for (const auto& p : pieces) rhs += parity(c.dim() - p.dim()) * psi(p, x, l);
            rec.equal(psi(c, x, l), rhs, "subdivision", [&] { return in() + " x=" + to_string(x) + " lambda=" + to_string(l); });
        }
    }

    // Vanishing for positive pairing, and the open-cone valuation.
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t n = 1 + t % 4;
        auto f = random_conic_function(rng, n);
        RationalVector x, l;
        do {
            x = rng.integer_vector(n, 3);
            l = rng.integer_vector(n, 3);
        } while (dot(l, x) <= 0);
        long total = 0, open_total = 0;
        for (const auto& [key, term] : f.terms()) {
            total += term.second * psi(term.first, x, l);
            open_total += term.second * phi(term.first, x, l);
        }
        auto in = [&] { return "x=" + to_string(x) + " lambda=" + to_string(l) + " terms=" + std::to_string(f.terms().size()); };
        rec.equal(total, 0, "positive-pairing/closed", in);
        rec.equal(open_total, 0, "positive-pairing/open", in);

        auto c = random_cone(rng, n);
        for (int k = 0; k < 3; ++k) {
            auto y = rng.integer_vector(n, 2), m = rng.integer_vector(n, 2);
            if (k == 0) y = rng.vector(n, 5, 3);
            auto cin = [&] { return pair_inputs(c, y, m); };
            long open = phi(c, y, m);
            if (regular_for(c, y)) rec.equal(open, psi(c, y, m), "open-equals-closed-at-regular", cin);
            long via_faces = 0, face_sum = 0;
            for (const auto& fc : c.faces()) {
                via_faces += parity(fc.dim) * psi(c.face_cone(fc), y, m);
                bool in_open = c.plus_span(fc).relint_contains(y);
                bool dual = c.face_cone(fc).dual().contains(m);
                if (in_open && dual) face_sum += parity(fc.dim);
            }
            rec.equal(open, parity(c.dim()) * via_faces, "open-valuation/face-expansion", cin);
            rec.equal(open, face_sum, "open-valuation/open-face-sum", cin);
        }
    }
}

void nearest_face_suite(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&) {
    struct Instance {
        Cone cone;
        RationalMatrix gram;
    };
    std::vector<Instance> inst;
    const std::size_t count = cases ? cases : 100;
    if (system == "random") {
        for (std::size_t t = 0; t < count; ++t) {
            std::size_t n = 1 + t % 4;
            inst.push_back({random_cone(rng, n), random_gram(rng, n)});
        }
    } else {
        auto r = RootSystem::from_type(system);
        for (std::size_t c = 0; c < r.chamber_count(); ++c) inst.push_back({r.chamber_cone(c), r.invariant_form()});
    }

    // Exactly one face accepts each point: x in relint F + (-F^perp).
    const std::size_t per = system == "random" ? 5 : std::max<std::size_t>(1, (cases ? cases : 500) / inst.size() + 1);
    for (const auto& [c, gram] : inst) {
        std::size_t n = c.ambient_dim();
        for (std::size_t k = 0; k < per; ++k) {
            auto x = rng.integer_vector(n, 4);
            std::size_t accepted = 0, which = 0;
            for (std::size_t i = 0; i < c.faces().size(); ++i) {
                const auto& f = c.faces()[i];
                auto basis = face_basis(c, f);
                RationalVector p = basis.empty() ? RationalVector(n) : Projector(basis, gram)(x);
                if (!c.in_face_relint(f, p)) continue;
                bool normal = true;
                for (const auto& g : c.plus_span(f).generators()) normal = normal && form(gram, p - x, g) >= 0;
                if (normal) {
                    ++accepted;
                    which = i;
                }
            }
            auto in = [&] { return "cone=" + c.key() + " x=" + to_string(x); };
            rec.equal(static_cast<long>(accepted), 1, "face-partition", in);
            if (accepted == 1) rec.equal(static_cast<long>(nearest_face(c, x, gram).face), static_cast<long>(which),
                                         "face-partition/nearest-face", in);
        }
    }

    for (const auto& [c, gram] : inst) {
        std::size_t n = c.ambient_dim();
        for (int k = 0; k < 4; ++k) {
            auto x = rng.integer_vector(n, 4);
            RationalVector y = k % 2 ? relint_point(c, rng) : rng.integer_vector(n, 3);
            rec.equal(nearest_face_expansion(c, x, y, gram), c.relint_contains(y) ? parity(c.dim()) : 0,
                      "nearest-face-expansion",
                      [&] { return "cone=" + c.key() + " x=" + to_string(x) + " y=" + to_string(y); });
        }
    }

    std::size_t conic_checked = 0;
    for (const auto& [c, gram] : inst) {
        std::size_t n = c.ambient_dim();
        if (n > 3 || conic_checked >= count) continue;
        ++conic_checked;
        std::vector<RationalVector> whole;
        for (std::size_t i = 0; i < n; ++i) whole.push_back(RationalVector::unit(n, i));
        ConicFunction sum_perp(n), sum_dual(n);
        for (const auto& f : c.faces()) {
            auto fc = c.face_cone(f);
            auto perp = dual_within(c.plus_span(f), whole, gram);
            auto gens = fc.generators();
            for (const auto& g : perp.generators()) gens.push_back(g);
            sum_perp += parity(perp.dim()) * ConicFunction::relint_indicator(Cone::from_generators(n, gens));

            auto k1 = dual_within(perp, span_basis(perp.generators(), n), gram);
            auto k2 = dual_within(fc, span_basis(fc.generators(), n), gram);
            auto g2 = k1.generators();
            for (const auto& g : k2.generators()) g2.push_back(g);
            sum_dual += parity(f.dim) * ConicFunction::relint_indicator(Cone::from_generators(n, g2));
        }
        ConicFunction expect_perp(n), expect_dual(n);
        if (c.is_subspace()) {
            expect_perp.add(Cone::whole_space(n), parity(n - c.dim()));
            expect_dual.add(Cone::origin(n), parity(c.dim()));
        }
        auto in = [&] { return "cone=" + c.key(); };
        rec.truth(conic_equal(sum_perp, expect_perp), "orthogonal-face-sum", in);
        rec.truth(conic_equal(sum_dual, expect_dual), "dual-face-sum-in-spans", in);
    }
}

}  // namespace dsc::detail
