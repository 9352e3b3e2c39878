#include "dsc/cones.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>

namespace dsc {

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t(1) << (i % 64); }

Bits intersect(const Bits& a, const Bits& b) {
    Bits c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] & b[i];
    return c;
}

bool superset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((a[i] & b[i]) != b[i]) return false;
    return true;
}

// Projects v onto the orthogonal complement (standard dot product) of span(basis).
class ComplementProjector {
public:
    ComplementProjector(const std::vector<RationalVector>& basis, std::size_t n)
        : proj_(basis.empty() ? std::nullopt
                              : std::optional<Projector>(Projector(basis, RationalMatrix::identity(n)))) {}
    RationalVector operator()(const RationalVector& v) const { return proj_ ? v - (*proj_)(v) : v; }

private:
    std::optional<Projector> proj_;
};

std::vector<RationalVector> canonical_rays(const std::vector<RationalVector>& rays,
                                           const std::vector<RationalVector>& lineality, std::size_t n) {
    ComplementProjector p(lineality, n);
    std::set<RationalVector> out;
    for (const auto& r : rays) {
        RationalVector q = primitive(p(r));
        if (!q.is_zero()) out.insert(std::move(q));
    }
    return {out.begin(), out.end()};
}

}  // namespace

namespace detail {

VRep double_description(std::size_t n, const std::vector<RationalVector>& ineqs) {
    for (const auto& a : ineqs)
        if (a.size() != n) throw DimensionMismatch("inequality dimension");
    std::vector<RationalVector> lin;
    for (std::size_t i = 0; i < n; ++i) lin.push_back(RationalVector::unit(n, i));
    std::vector<RationalVector> rays;
    std::size_t words = ineqs.size() / 64 + 1;
    std::vector<Bits> zeros;  // zero sets of rays among processed inequalities

    for (std::size_t k = 0; k < ineqs.size(); ++k) {
        const RationalVector& a = ineqs[k];
        if (a.is_zero()) {
            for (auto& z : zeros) set_bit(z, k);
            continue;
        }
        std::size_t pivot = lin.size();
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (dot(a, lin[i]) != 0) {
                pivot = i;
                break;
            }
        if (pivot < lin.size()) {
            RationalVector l0 = lin[pivot];
            Rational al0 = dot(a, l0);
            if (al0 < 0) {
                l0 = -l0;
                al0 = -al0;
            }
            lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pivot));
            for (auto& l : lin) l -= (dot(a, l) / al0) * l0;
            for (std::size_t i = 0; i < rays.size(); ++i) {
                rays[i] = primitive(rays[i] - (dot(a, rays[i]) / al0) * l0);
                set_bit(zeros[i], k);
            }
            // l0 is tight on every earlier inequality since it was in the lineality space.
            Bits z(words, 0);
            for (std::size_t j = 0; j < k; ++j) set_bit(z, j);
            rays.push_back(primitive(l0));
            zeros.push_back(std::move(z));
            continue;
        }
        std::vector<std::size_t> pos, neg;
        std::vector<Rational> val(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i]);
            if (val[i] > 0)
                pos.push_back(i);
            else if (val[i] < 0)
                neg.push_back(i);
            else
                set_bit(zeros[i], k);
        }
        if (neg.empty()) continue;
        std::vector<RationalVector> new_rays;
        std::vector<Bits> new_zeros;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (val[i] >= 0) {
                new_rays.push_back(rays[i]);
                new_zeros.push_back(zeros[i]);
            }
        for (auto p : pos)
            for (auto q : neg) {
                Bits common = intersect(zeros[p], zeros[q]);
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != q && superset(zeros[r], common)) adjacent = false;
                if (!adjacent) continue;
                RationalVector c = val[p] * rays[q] - val[q] * rays[p];
                set_bit(common, k);
                new_rays.push_back(primitive(c));
                new_zeros.push_back(std::move(common));
            }
        rays = std::move(new_rays);
        zeros = std::move(new_zeros);
    }
    return {std::move(lin), std::move(rays)};
}

}  // namespace detail

Cone Cone::from_vrep(std::size_t n, std::vector<RationalVector> lin, std::vector<RationalVector> rays) {
    auto d = std::make_shared<Data>();
    d->n = n;
    d->lineality = span_basis(lin, n);
    d->rays = canonical_rays(rays, d->lineality, n);
    std::vector<RationalVector> dual_ineqs;
    for (const auto& l : d->lineality) {
        dual_ineqs.push_back(l);
        dual_ineqs.push_back(-l);
    }
    for (const auto& r : d->rays) dual_ineqs.push_back(r);
    auto dual = detail::double_description(n, dual_ineqs);
    d->equations = span_basis(dual.lineality, n);
    d->facets = canonical_rays(dual.rays, d->equations, n);
    std::ostringstream os;
    os << n << "|L";
    for (const auto& v : d->lineality) os << to_string(v);
    os << "|R";
    for (const auto& v : d->rays) os << to_string(v);
    d->key = os.str();
    return Cone(std::move(d));
}

Cone Cone::from_generators(std::size_t dim, const std::vector<RationalVector>& gens) {
    for (const auto& g : gens)
        if (g.size() != dim) throw DimensionMismatch("generator dimension");
    // Facets first, then the generators back from the facets: this discards redundant generators.
    auto dual = detail::double_description(dim, gens);
    std::vector<RationalVector> ineqs = dual.rays;
    for (const auto& e : dual.lineality) {
        ineqs.push_back(e);
        ineqs.push_back(-e);
    }
    auto v = detail::double_description(dim, ineqs);
    return from_vrep(dim, std::move(v.lineality), std::move(v.rays));
}

Cone Cone::from_inequalities(std::size_t dim, const std::vector<RationalVector>& ineqs,
                             const std::vector<RationalVector>& eqs) {
    std::vector<RationalVector> all = ineqs;
    for (const auto& e : eqs) {
        all.push_back(e);
        all.push_back(-e);
    }
    for (const auto& a : all)
        if (a.size() != dim) throw DimensionMismatch("inequality dimension");
    auto v = detail::double_description(dim, all);
    return from_vrep(dim, std::move(v.lineality), std::move(v.rays));
}

Cone Cone::whole_space(std::size_t dim) { return from_inequalities(dim, {}); }
Cone Cone::origin(std::size_t dim) { return from_generators(dim, {}); }

Cone Cone::orthant(std::size_t dim) {
    std::vector<RationalVector> gens;
    for (std::size_t i = 0; i < dim; ++i) gens.push_back(RationalVector::unit(dim, i));
    return from_generators(dim, gens);
}

std::vector<RationalVector> Cone::generators() const {
    std::vector<RationalVector> g;
    for (const auto& l : d_->lineality) {
        g.push_back(l);
        g.push_back(-l);
    }
    g.insert(g.end(), d_->rays.begin(), d_->rays.end());
    return g;
}

std::vector<RationalVector> Cone::inequalities() const {
    std::vector<RationalVector> h = d_->facets;
    for (const auto& e : d_->equations) {
        h.push_back(e);
        h.push_back(-e);
    }
    return h;
}

bool Cone::is_simplicial() const {
    return is_pointed() && rank(d_->rays, d_->n) == d_->rays.size();
}

bool Cone::contains(const RationalVector& x) const {
    if (x.size() != d_->n) throw DimensionMismatch("cone membership");
    for (const auto& e : d_->equations)
        if (dot(e, x) != 0) return false;
    for (const auto& f : d_->facets)
        if (dot(f, x) < 0) return false;
    return true;
}

bool Cone::relint_contains(const RationalVector& x) const {
    if (x.size() != d_->n) throw DimensionMismatch("cone membership");
    for (const auto& e : d_->equations)
        if (dot(e, x) != 0) return false;
    for (const auto& f : d_->facets)
        if (dot(f, x) <= 0) return false;
    return true;
}

Cone Cone::dual() const {
    auto d = std::make_shared<Data>();
    d->n = d_->n;
    d->lineality = d_->equations;
    d->rays = d_->facets;
    d->equations = d_->lineality;
    d->facets = d_->rays;
    std::ostringstream os;
    os << d->n << "|L";
    for (const auto& v : d->lineality) os << to_string(v);
    os << "|R";
    for (const auto& v : d->rays) os << to_string(v);
    d->key = os.str();
    return Cone(std::move(d));
}

Cone Cone::negated() const {
    std::vector<RationalVector> g;
    for (const auto& v : generators()) g.push_back(-v);
    return from_generators(d_->n, g);
}

const std::vector<Face>& Cone::faces() const {
    std::call_once(d_->faces_once, [this] {
        const auto& R = d_->rays;
        const auto& H = d_->facets;
        std::size_t nr = R.size(), nh = H.size();
        std::vector<std::vector<bool>> tight(nh, std::vector<bool>(nr));
        for (std::size_t j = 0; j < nh; ++j)
            for (std::size_t i = 0; i < nr; ++i) tight[j][i] = dot(H[j], R[i]) == 0;
        auto closure = [&](const std::vector<std::size_t>& rs) {
            std::vector<std::size_t> act;
            for (std::size_t j = 0; j < nh; ++j)
                if (std::all_of(rs.begin(), rs.end(), [&](std::size_t i) { return tight[j][i]; }))
                    act.push_back(j);
            std::vector<std::size_t> closed;
            for (std::size_t i = 0; i < nr; ++i)
                if (std::all_of(act.begin(), act.end(), [&](std::size_t j) { return tight[j][i]; }))
                    closed.push_back(i);
            return std::make_pair(closed, act);
        };
        std::vector<std::size_t> all(nr);
        for (std::size_t i = 0; i < nr; ++i) all[i] = i;
        std::set<std::vector<std::size_t>> seen;
        std::vector<Face> out;
        std::vector<std::vector<std::size_t>> queue{all};
        seen.insert(all);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            auto [rs, act] = closure(queue[qi]);
            std::vector<RationalVector> fr;
            for (auto i : rs) fr.push_back(R[i]);
            out.push_back(Face{rs, act, d_->lineality.size() + rank(fr, d_->n)});
            for (std::size_t j = 0; j < nh; ++j) {
                if (std::find(act.begin(), act.end(), j) != act.end()) continue;
                std::vector<std::size_t> sub;
                for (auto i : rs)
                    if (tight[j][i]) sub.push_back(i);
                auto child = closure(sub).first;
                if (seen.insert(child).second) queue.push_back(child);
            }
        }
        std::stable_sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.dim > b.dim; });
        d_->faces = std::move(out);
    });
    return d_->faces;
}

Cone Cone::face_cone(const Face& f) const {
    std::vector<RationalVector> g;
    for (const auto& l : d_->lineality) {
        g.push_back(l);
        g.push_back(-l);
    }
    for (auto i : f.rays) g.push_back(d_->rays[i]);
    return from_generators(d_->n, g);
}

Cone Cone::plus_span(const Face& f) const {
    std::vector<RationalVector> g = generators();
    for (auto i : f.rays) g.push_back(-d_->rays[i]);
    return from_generators(d_->n, g);
}

bool Cone::in_face_relint(const Face& f, const RationalVector& x) const {
    for (const auto& e : d_->equations)
        if (dot(e, x) != 0) return false;
    std::vector<bool> act(d_->facets.size(), false);
    for (auto j : f.active_facets) act[j] = true;
    for (std::size_t j = 0; j < d_->facets.size(); ++j) {
        int s = sgn(dot(d_->facets[j], x));
        if (act[j] ? s != 0 : s <= 0) return false;
    }
    return true;
}

std::string Cone::key() const { return d_->key; }

Cone dual_within(const Cone& k, const std::vector<RationalVector>& subspace, const RationalMatrix& gram) {
    std::size_t n = k.ambient_dim();
    std::vector<RationalVector> ineqs;
    for (const auto& w : k.generators()) ineqs.push_back(gram * w);
    return Cone::from_inequalities(n, ineqs, annihilator(subspace, n));
}

}  // namespace dsc
