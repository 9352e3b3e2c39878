#include "dsc/cones.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dsc {

namespace {

long parity(std::size_t k) { return (k % 2) ? -1 : 1; }

bool lineality_annihilates(const Cone& c, const RationalVector& lambda) {
    for (const auto& l : c.lineality())
        if (dot(lambda, l) != 0) return false;
    return true;
}

bool in_face_dual(const Cone& c, const Face& f, const RationalVector& lambda) {
    if (!lineality_annihilates(c, lambda)) return false;
    for (auto i : f.rays)
        if (dot(lambda, c.rays()[i]) < 0) return false;
    return true;
}

// x in C + span F (strict = false) or in its relative interior (strict = true).
bool in_plus_span(const Cone& c, const Face& f, const RationalVector& x, bool strict) {
    for (const auto& e : c.equations())
        if (dot(e, x) != 0) return false;
    for (auto j : f.active_facets) {
        int s = sgn(dot(c.facets()[j], x));
        if (strict ? s <= 0 : s < 0) return false;
    }
    return true;
}

void check_dims(const Cone& c, const RationalVector& x, const RationalVector& lambda) {
    if (x.size() != c.ambient_dim() || lambda.size() != c.ambient_dim())
        throw DimensionMismatch("psi/phi argument dimension");
}

bool full_simplicial(const Cone& c) {
    return c.is_simplicial() && c.rays().size() == c.ambient_dim();
}

void simplicial_coords(const Cone& c, const RationalVector& x, const RationalVector& lambda,
                       std::vector<Rational>& a, std::vector<Rational>& b) {
    auto m = RationalMatrix::from_columns(c.rays(), c.ambient_dim());
    auto sol = solve_linear(m, x);
    a = sol->data();
    b.clear();
    for (const auto& r : c.rays()) b.push_back(dot(lambda, r));
}

}  // namespace

long psi_simplicial(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("simplicial coordinates");
    std::size_t il = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool in_x = a[i] >= 0, in_l = b[i] >= 0;
        if (in_x == in_l) return 0;
        il += in_l;
    }
    return parity(il);
}

long phi_simplicial(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("simplicial coordinates");
    std::size_t il = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool in_x = a[i] > 0, in_l = b[i] >= 0;
        if (in_x == in_l) return 0;
        il += in_l;
    }
    return parity(il);
}

long psi_face_sum(const Cone& c, const RationalVector& x, const RationalVector& lambda) {
    check_dims(c, x, lambda);
    long s = 0;
    for (const auto& f : c.faces())
        if (in_plus_span(c, f, x, false) && in_face_dual(c, f, lambda)) s += parity(f.dim);
    return s;
}

long phi_face_sum(const Cone& c, const RationalVector& x, const RationalVector& lambda) {
    check_dims(c, x, lambda);
    long s = 0;
    for (const auto& f : c.faces())
        if (in_plus_span(c, f, x, true) && in_face_dual(c, f, lambda)) s += parity(f.dim);
    return s;
}

long psi(const Cone& c, const RationalVector& x, const RationalVector& lambda) {
    check_dims(c, x, lambda);
    if (!full_simplicial(c)) return psi_face_sum(c, x, lambda);
    std::vector<Rational> a, b;
    simplicial_coords(c, x, lambda, a, b);
    return psi_simplicial(a, b);
}

long phi(const Cone& c, const RationalVector& x, const RationalVector& lambda) {
    check_dims(c, x, lambda);
    if (!full_simplicial(c)) return phi_face_sum(c, x, lambda);
    std::vector<Rational> a, b;
    simplicial_coords(c, x, lambda, a, b);
    return phi_simplicial(a, b);
}

ConicFunction ConicFunction::indicator(const Cone& c, long coeff) {
    ConicFunction f(c.ambient_dim());
    f.add(c, coeff);
    return f;
}

ConicFunction ConicFunction::relint_indicator(const Cone& c) {
    ConicFunction f(c.ambient_dim());
    for (const auto& face : c.faces()) f.add(c.face_cone(face), parity(c.dim() + face.dim));
    return f;
}

void ConicFunction::add(const Cone& c, long coeff) {
    if (c.ambient_dim() != n_) throw DimensionMismatch("conic function term");
    if (coeff == 0) return;
    auto it = terms_.find(c.key());
    if (it == terms_.end()) {
        terms_.emplace(c.key(), std::make_pair(c, coeff));
        return;
    }
    it->second.second += coeff;
    if (it->second.second == 0) terms_.erase(it);
}

long ConicFunction::evaluate(const RationalVector& x) const {
    long s = 0;
    for (const auto& [k, t] : terms_)
        if (t.first.contains(x)) s += t.second;
    return s;
}

ConicFunction ConicFunction::star() const {
    ConicFunction out(n_);
    for (const auto& [k, t] : terms_)
        for (const auto& face : t.first.faces()) out.add(t.first.face_cone(face), t.second * parity(face.dim));
    return out;
}

ConicFunction ConicFunction::wedge() const {
    ConicFunction out(n_);
    for (const auto& [k, t] : terms_) {
        Cone d = t.first.dual();
        for (const auto& face : d.faces()) out.add(d.face_cone(face), t.second * parity(n_ + face.dim));
    }
    return out;
}

ConicFunction& ConicFunction::operator+=(const ConicFunction& o) {
    if (o.n_ != n_) throw DimensionMismatch("conic function sum");
    for (const auto& [k, t] : o.terms_) add(t.first, t.second);
    return *this;
}

ConicFunction& ConicFunction::operator-=(const ConicFunction& o) {
    if (o.n_ != n_) throw DimensionMismatch("conic function difference");
    for (const auto& [k, t] : o.terms_) add(t.first, -t.second);
    return *this;
}

ConicFunction operator*(long c, ConicFunction a) {
    ConicFunction out(a.n_);
    for (const auto& [k, t] : a.terms_) out.add(t.first, c * t.second);
    return out;
}

namespace {

struct Cell {
    std::vector<RationalVector> eqs, strict;
    RationalVector sample;
};

std::optional<RationalVector> relint_point(std::size_t n, const std::vector<RationalVector>& eqs,
                                           const std::vector<RationalVector>& strict) {
    std::vector<RationalVector> ineqs = strict;
    for (const auto& e : eqs) {
        ineqs.push_back(e);
        ineqs.push_back(-e);
    }
    auto v = detail::double_description(n, ineqs);
    for (const auto& s : strict)
        if (std::none_of(v.rays.begin(), v.rays.end(), [&](const RationalVector& r) { return dot(s, r) > 0; }))
            return std::nullopt;
    // A sum of generators lies in the relative interior, where every non-implicit inequality is strict.
    RationalVector p(n);
    for (const auto& r : v.rays) p += r;
    return p;
}

RationalVector sign_normalized(const RationalVector& v) {
    RationalVector p = primitive(v);
    for (const auto& x : p) {
        if (x == 0) continue;
        if (x < 0) p = -p;
        break;
    }
    return p;
}

}  // namespace

std::vector<RationalVector> arrangement_cells(std::size_t n, const std::vector<RationalVector>& forms) {
    std::set<RationalVector> hs;
    for (const auto& f : forms) {
        if (f.size() != n) throw DimensionMismatch("arrangement form");
        if (!f.is_zero()) hs.insert(sign_normalized(f));
    }
    std::vector<Cell> cells{Cell{{}, {}, RationalVector(n)}};
    for (const auto& h : hs) {
        std::vector<Cell> next;
        for (const auto& c : cells) {
            int s = sgn(dot(h, c.sample));
            for (int opt : {0, 1, -1}) {
                Cell d = c;
                if (opt == 0)
                    d.eqs.push_back(h);
                else
                    d.strict.push_back(opt > 0 ? h : -h);
                if (opt != s) {
                    auto p = relint_point(n, d.eqs, d.strict);
                    if (!p) continue;
                    d.sample = *p;
                }
                next.push_back(std::move(d));
            }
        }
        cells = std::move(next);
    }
    std::vector<RationalVector> out;
    for (auto& c : cells) out.push_back(std::move(c.sample));
    return out;
}

bool conic_equal(const ConicFunction& f, const ConicFunction& g) {
    if (f.ambient_dim() != g.ambient_dim()) throw DimensionMismatch("conic_equal");
    ConicFunction h = f - g;
    if (h.is_trivially_zero()) return true;
    std::size_t n = h.ambient_dim();
    // Cheap rejection on a few fixed lattice points before the exact refinement.
    for (int k = 0; k < 16; ++k) {
        RationalVector p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<long>((k * 7 + static_cast<int>(i) * 13 + 3) % 9) - 4;
        if (h.evaluate(p) != 0) return false;
    }
    std::vector<RationalVector> forms;
    for (const auto& [k, t] : h.terms()) {
        forms.insert(forms.end(), t.first.facets().begin(), t.first.facets().end());
        forms.insert(forms.end(), t.first.equations().begin(), t.first.equations().end());
    }
    for (const auto& p : arrangement_cells(n, forms))
        if (h.evaluate(p) != 0) return false;
    return true;
}

NearestFace nearest_face(const Cone& c, const RationalVector& x, const RationalMatrix& gram) {
    std::size_t n = c.ambient_dim();
    if (x.size() != n || gram.rows() != n || gram.cols() != n) throw DimensionMismatch("nearest_face");
    std::optional<NearestFace> found;
    const auto& faces = c.faces();
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        std::vector<RationalVector> gens = c.lineality();
        for (auto i : faces[fi].rays) gens.push_back(c.rays()[i]);
        auto basis = span_basis(gens, n);
        RationalVector x0 = basis.empty() ? RationalVector(n) : Projector(basis, gram)(x);
        if (!c.in_face_relint(faces[fi], x0)) continue;
        RationalVector w = gram * (x0 - x);
        bool ok = std::all_of(c.rays().begin(), c.rays().end(), [&](const RationalVector& r) { return dot(w, r) >= 0; });
        if (!ok) continue;
        if (found) throw std::logic_error("nearest_face: decomposition is not unique");
        found = NearestFace{fi, x0};
    }
    if (!found) throw std::logic_error("nearest_face: no face found");
    return *found;
}

long nearest_face_expansion(const Cone& c, const RationalVector& x, const RationalVector& y, const RationalMatrix& gram) {
    std::size_t n = c.ambient_dim();
    if (x.size() != n || y.size() != n) throw DimensionMismatch("nearest_face_expansion");
    long s = 0;
    for (const auto& f : c.faces()) {
        std::vector<RationalVector> gens = c.lineality();
        for (auto i : f.rays) gens.push_back(c.rays()[i]);
        auto basis = span_basis(gens, n);
        RationalVector p = basis.empty() ? RationalVector(n) : Projector(basis, gram)(x);
        if (!c.in_face_relint(f, p)) continue;
        RationalVector lam = gram * (p - x);
        s += psi(c.plus_span(f), -y, lam);
    }
    return s;
}

}  // namespace dsc
