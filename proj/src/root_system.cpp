#include "dsc/rootsys.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <sstream>

namespace dsc {

namespace {

constexpr std::size_t kMaxRoots = 2000;
constexpr std::size_t kMaxOrder = 500000;

int sgn(const Rational& q) { return sign(q); }

std::vector<std::vector<long>> cartan_block(char letter, std::size_t n) {
    std::vector<std::vector<long>> a(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](std::size_t i, std::size_t j) { a[i][j] = a[j][i] = -1; };
    switch (letter) {
    case 'A':
        if (n < 1) throw UnsupportedType("A_n needs n >= 1");
        for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
        break;
    case 'B':
    case 'C':
        if (n < 2) throw UnsupportedType(std::string(1, letter) + "_n needs n >= 2");
        for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
        // Last simple root short for B, long for C.
        if (letter == 'B') a[n - 1][n - 2] = -2;
        else a[n - 2][n - 1] = -2;
        break;
    case 'D':
        if (n < 3) throw UnsupportedType("D_n needs n >= 3");
        for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(n - 3, n - 1);
        break;
    case 'F':
        if (n != 4) throw UnsupportedType("F_n exists only for n = 4");
        link(0, 1);
        link(2, 3);
        a[1][2] = -1;
        a[2][1] = -2;
        break;
    case 'G':
        if (n != 2) throw UnsupportedType("G_n exists only for n = 2");
        a[0][1] = -3;
        a[1][0] = -1;
        break;
    default:
        throw UnsupportedType(std::string("unsupported Cartan type letter '") + letter + "'");
    }
    return a;
}

void validate_cartan(const std::vector<std::vector<long>>& a) {
    std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("Cartan matrix must be square");
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][i] != 2) throw std::invalid_argument("Cartan matrix must have 2 on the diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (a[i][j] > 0) throw std::invalid_argument("Cartan matrix off-diagonal entries must be <= 0");
            if ((a[i][j] == 0) != (a[j][i] == 0)) throw std::invalid_argument("Cartan matrix zero pattern must be symmetric");
            if (a[i][j] * a[j][i] > 3) throw std::invalid_argument("Cartan matrix is not of finite type");
        }
    }
    // Symmetrize with d_i a_ij = d_j a_ji and test positive definiteness.
    std::vector<Rational> d(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (d[s] != 0) continue;
        d[s] = 1;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            std::size_t i = queue.front();
            queue.pop_front();
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || a[i][j] == 0) continue;
                Rational dj = d[i] * a[i][j] / a[j][i];
                if (d[j] == 0) {
                    d[j] = dj;
                    queue.push_back(j);
                } else if (d[j] != dj) {
                    throw std::invalid_argument("Cartan matrix is not symmetrizable");
                }
            }
        }
    }
    for (std::size_t k = 1; k <= n; ++k) {
        RationalMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) = d[i] * a[i][j];
        if (determinant(m) <= 0) throw std::invalid_argument("Cartan matrix is not of finite type");
    }
}

std::string serialize(std::size_t n, const std::vector<RationalVector>& roots,
                      const std::vector<RationalVector>& coroots, const std::vector<bool>& positive) {
    std::ostringstream os;
    os << n << ':';
    for (std::size_t i = 0; i < roots.size(); ++i)
        os << to_string(roots[i]) << to_string(coroots[i]) << (positive[i] ? '+' : '-');
    return os.str();
}

RationalMatrix reflection_matrix(const RationalVector& root, const RationalVector& coroot) {
    std::size_t n = root.size();
    RationalMatrix m = RationalMatrix::identity(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m(a, b) -= coroot[a] * root[b];
    return m;
}

}  // namespace

std::size_t default_rank_limit() {
    if (const char* env = std::getenv("RANK_LIMIT")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 4;
}

RootSystem RootSystem::from_type(std::string_view type, std::size_t rank_limit) {
    std::vector<std::pair<char, std::size_t>> factors;
    std::size_t pos = 0;
    while (pos < type.size()) {
        std::size_t next = type.find_first_of("xX", pos);
        if (next == pos) throw UnsupportedType("malformed type string '" + std::string(type) + "'");
        std::string_view part = type.substr(pos, next == std::string_view::npos ? type.npos : next - pos);
        if (part.size() < 2) throw UnsupportedType("malformed type string '" + std::string(type) + "'");
        char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(part[0])));
        std::size_t n = 0;
        for (char ch : part.substr(1)) {
            if (ch < '0' || ch > '9') throw UnsupportedType("malformed type string '" + std::string(type) + "'");
            n = n * 10 + static_cast<std::size_t>(ch - '0');
        }
        factors.emplace_back(letter, n);
        if (next == std::string_view::npos) break;
        pos = next + 1;
        if (pos == type.size()) throw UnsupportedType("malformed type string '" + std::string(type) + "'");
    }
    if (factors.empty()) throw UnsupportedType("empty type string");
    std::size_t total = 0;
    std::vector<std::vector<std::vector<long>>> blocks;
    for (auto [letter, n] : factors) {
        blocks.push_back(cartan_block(letter, n));
        total += n;
    }
    if (total > rank_limit)
        throw UnsupportedType("rank " + std::to_string(total) + " exceeds the rank limit " +
                              std::to_string(rank_limit));
    std::vector<std::vector<long>> a(total, std::vector<long>(total, 0));
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) a[off + i][off + j] = b[i][j];
        off += b.size();
    }
    return from_cartan(a, std::string(type));
}

RootSystem RootSystem::from_cartan(const std::vector<std::vector<long>>& cartan, std::string label) {
    validate_cartan(cartan);
    std::size_t n = cartan.size();
    std::vector<RationalVector> simple_co(n);
    for (std::size_t i = 0; i < n; ++i) {
        simple_co[i] = RationalVector(n);
        for (std::size_t j = 0; j < n; ++j) simple_co[i][j] = cartan[i][j];
    }
    std::map<RationalVector, RationalVector> pairs;
    std::deque<RationalVector> queue;
    for (std::size_t i = 0; i < n; ++i) {
        pairs.emplace(RationalVector::unit(n, i), simple_co[i]);
        queue.push_back(RationalVector::unit(n, i));
    }
    while (!queue.empty()) {
        RationalVector root = queue.front();
        queue.pop_front();
        RationalVector co = pairs.at(root);
        for (std::size_t j = 0; j < n; ++j) {
            Rational c = dot(root, simple_co[j]);
            RationalVector r2 = root - c * RationalVector::unit(n, j);
            RationalVector co2 = co - co[j] * simple_co[j];
            if (pairs.emplace(r2, co2).second) {
                if (pairs.size() > kMaxRoots) throw std::invalid_argument("Cartan matrix is not of finite type");
                queue.push_back(r2);
            }
        }
    }
    std::vector<RationalVector> pos;
    for (const auto& [r, co] : pairs) {
        bool p = std::all_of(r.begin(), r.end(), [](const Rational& q) { return q >= 0; });
        if (p) pos.push_back(r);
    }
    auto height = [](const RationalVector& v) {
        Rational h = 0;
        for (const auto& q : v) h += q;
        return h;
    };
    std::sort(pos.begin(), pos.end(), [&](const RationalVector& a, const RationalVector& b) {
        Rational ha = height(a), hb = height(b);
        if (ha != hb) return ha < hb;
        return a > b;  // e1 before e2 at height one
    });
    std::vector<RationalVector> roots, coroots;
    std::vector<bool> positive;
    for (const auto& r : pos) {
        roots.push_back(r);
        coroots.push_back(pairs.at(r));
        positive.push_back(true);
    }
    for (const auto& r : pos) {
        roots.push_back(-r);
        coroots.push_back(-pairs.at(r));
        positive.push_back(false);
    }
    return from_roots(n, std::move(roots), std::move(coroots), std::move(positive), std::move(label));
}

RootSystem RootSystem::empty(std::size_t dim) { return from_roots(dim, {}, {}, {}, ""); }

RootSystem RootSystem::from_roots(std::size_t n, std::vector<RationalVector> roots, std::vector<RationalVector> coroots,
                                  std::vector<bool> positive, std::string label) {
    if (roots.size() != coroots.size() || roots.size() != positive.size())
        throw DimensionMismatch("roots, coroots and positivity flags must be index-aligned");
    auto d = std::make_shared<Data>();
    d->label = std::move(label);
    d->n = n;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (roots[i].size() != n || coroots[i].size() != n) throw DimensionMismatch("root of wrong dimension");
        if (dot(roots[i], coroots[i]) != 2) throw std::invalid_argument("root and coroot must pair to 2");
        if (!d->root_index.emplace(roots[i], i).second) throw std::invalid_argument("repeated root");
        if (!d->coroot_index.emplace(coroots[i], i).second) throw std::invalid_argument("repeated coroot");
    }
    d->roots = std::move(roots);
    d->coroots = std::move(coroots);
    d->positive = std::move(positive);
    std::size_t m = d->roots.size();
    d->negative_of.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto it = d->root_index.find(-d->roots[i]);
        if (it == d->root_index.end() || d->coroots[it->second] != -d->coroots[i])
            throw std::invalid_argument("root set not closed under negation");
        if (d->positive[i] == d->positive[it->second])
            throw std::invalid_argument("exactly one of each pair +-alpha must be positive");
        d->negative_of[i] = it->second;
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            RationalVector r = d->roots[j] - dot(d->roots[j], d->coroots[i]) * d->roots[i];
            RationalVector c = d->coroots[j] - dot(d->roots[i], d->coroots[j]) * d->coroots[i];
            auto it = d->root_index.find(r);
            if (it == d->root_index.end() || d->coroots[it->second] != c)
                throw std::invalid_argument("root set not closed under reflections");
        }
    for (std::size_t i = 0; i < m; ++i) {
        if (!d->positive[i]) continue;
        bool decomposable = false;
        for (std::size_t j = 0; j < m && !decomposable; ++j) {
            if (!d->positive[j] || j == i) continue;
            auto it = d->root_index.find(d->roots[i] - d->roots[j]);
            decomposable = it != d->root_index.end() && d->positive[it->second];
        }
        if (!decomposable) d->simple.push_back(i);
    }
    std::size_t r = d->simple.size();
    {
        std::vector<RationalVector> sr;
        for (auto i : d->simple) sr.push_back(d->roots[i]);
        if (dsc::rank(sr, n) != r) throw std::invalid_argument("positivity flags do not come from a chamber");
        d->lineality = kernel_basis(RationalMatrix::from_rows(sr, n));
        RationalMatrix pair(r, r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) pair(j, k) = dot(d->roots[d->simple[j]], d->coroots[d->simple[k]]);
        auto inv = inverse(pair);
        if (!inv) throw std::invalid_argument("simple coroots are dependent");
        for (std::size_t i = 0; i < r; ++i) {
            RationalVector w(n);
            for (std::size_t k = 0; k < r; ++k) w += (*inv)(k, i) * d->coroots[d->simple[k]];
            d->coweights.push_back(w);
        }
    }
    d->x_ref = RationalVector(n);
    for (const auto& w : d->coweights) d->x_ref += w;
    for (std::size_t i = 0; i < m; ++i)
        if ((dot(d->roots[i], d->x_ref) > 0) != d->positive[i])
            throw std::invalid_argument("positivity flags do not come from a chamber");

    std::vector<RationalMatrix> gens;
    for (auto i : d->simple) gens.push_back(reflection_matrix(d->roots[i], d->coroots[i]));
    WeylElement id;
    id.matrix = RationalMatrix::identity(n);
    d->W.push_back(id);
    d->by_image.emplace(d->x_ref, 0);
    for (std::size_t w = 0; w < d->W.size(); ++w) {
        for (std::size_t i = 0; i < r; ++i) {
            RationalMatrix mm = d->W[w].matrix * gens[i];
            RationalVector img = mm * d->x_ref;
            if (d->by_image.count(img)) continue;
            if (d->W.size() >= kMaxOrder) throw std::invalid_argument("Weyl group too large");
            WeylElement e;
            e.matrix = std::move(mm);
            e.word = d->W[w].word;
            e.word.push_back(i);
            d->by_image.emplace(std::move(img), d->W.size());
            d->W.push_back(std::move(e));
        }
    }
    for (std::size_t i = 0; i < r; ++i) d->simple_refl.push_back(d->by_image.at(gens[i] * d->x_ref));
    std::set<RationalVector> rays;
    std::map<RationalVector, std::size_t> ray_ids;
    for (std::size_t w = 0; w < d->W.size(); ++w) {
        auto& e = d->W[w];
        auto inv = inverse(e.matrix);
        e.dual_matrix = inv->transpose();
        e.inverse = d->by_image.at(*inv * d->x_ref);
        e.root_perm.resize(m);
        for (std::size_t j = 0; j < m; ++j) e.root_perm[j] = d->coroot_index.at(e.matrix * d->coroots[j]);
        RationalVector p = e.matrix * d->x_ref;
        std::vector<int> signs(m);
        for (std::size_t j = 0; j < m; ++j) signs[j] = sgn(dot(d->roots[j], p));
        d->chamber_index.emplace(signs, w);
        d->chamber_signs.push_back(std::move(signs));
        std::vector<std::size_t> ids;
        for (const auto& om : d->coweights) {
            RationalVector v = e.matrix * om;
            rays.insert(primitive(v));
            auto [it, fresh] = ray_ids.emplace(v, d->ray_vectors.size());
            if (fresh) d->ray_vectors.push_back(v);
            ids.push_back(it->second);
        }
        d->chamber_ray_ids.push_back(std::move(ids));
        if (e.length() > d->W[d->longest].length()) d->longest = w;
    }
    d->ray_orbit.assign(rays.begin(), rays.end());
    const auto& w0 = d->W[d->longest];
    d->minus_one = true;
    for (std::size_t j = 0; j < m; ++j) d->minus_one = d->minus_one && w0.root_perm[j] == d->negative_of[j];
    d->key = serialize(n, d->roots, d->coroots, d->positive);
    return RootSystem(std::move(d));
}

std::optional<std::size_t> RootSystem::find_root(const RationalVector& alpha) const {
    auto it = d_->root_index.find(alpha);
    if (it == d_->root_index.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> RootSystem::find_coroot(const RationalVector& coroot) const {
    auto it = d_->coroot_index.find(coroot);
    if (it == d_->coroot_index.end()) return std::nullopt;
    return it->second;
}

RootSystem RootSystem::dual() const {
    std::lock_guard<std::mutex> lock(d_->cache_mutex);
    if (!d_->dual) {
        std::string lbl = d_->label.empty() ? "" : d_->label + "^v";
        d_->dual = std::make_shared<RootSystem>(from_roots(d_->n, d_->coroots, d_->roots, d_->positive, lbl));
    }
    return *d_->dual;
}

std::size_t RootSystem::compose(std::size_t a, std::size_t b) const {
    return d_->by_image.at(d_->W[a].matrix * (d_->W[b].matrix * d_->x_ref));
}

std::size_t RootSystem::reflection(std::size_t root) const {
    return d_->by_image.at(reflection_matrix(d_->roots.at(root), d_->coroots.at(root)) * d_->x_ref);
}

std::optional<std::size_t> RootSystem::find_element(const RationalMatrix& m) const {
    auto it = d_->by_image.find(m * d_->x_ref);
    if (it == d_->by_image.end() || d_->W[it->second].matrix != m) return std::nullopt;
    return it->second;
}

std::string RootSystem::word(std::size_t w) const {
    const auto& wd = d_->W.at(w).word;
    if (wd.empty()) return "e";
    std::string s;
    for (std::size_t k = 0; k < wd.size(); ++k) {
        if (k) s += '*';
        s += 's' + std::to_string(wd[k] + 1);
    }
    return s;
}

std::size_t RootSystem::from_word(std::string_view word) const {
    std::size_t w = 0;
    if (word == "e" || word.empty()) return w;
    std::size_t pos = 0;
    while (pos <= word.size()) {
        std::size_t next = word.find('*', pos);
        std::string_view part = word.substr(pos, next == word.npos ? word.npos : next - pos);
        if (part.size() < 2 || part[0] != 's') throw ParseError("bad Weyl word '" + std::string(word) + "'");
        std::size_t i = 0;
        for (char ch : part.substr(1)) {
            if (ch < '0' || ch > '9') throw ParseError("bad Weyl word '" + std::string(word) + "'");
            i = i * 10 + static_cast<std::size_t>(ch - '0');
        }
        if (i < 1 || i > rank()) throw ParseError("simple reflection index out of range in '" + std::string(word) + "'");
        w = compose(w, d_->simple_refl[i - 1]);
        if (next == word.npos) break;
        pos = next + 1;
    }
    return w;
}

std::size_t RootSystem::q() const {
    if (!d_->minus_one) throw MinusOneNotInWeylGroup("-1 is not in the Weyl group of " + d_->label);
    return (positive_count() + rank()) / 2;
}

std::vector<std::size_t> RootSystem::reflection_subgroup(const std::vector<std::size_t>& roots) const {
    std::vector<std::size_t> gens;
    for (auto r : roots) gens.push_back(reflection(r));
    std::vector<std::size_t> out{0};
    std::set<std::size_t> seen{0};
    for (std::size_t k = 0; k < out.size(); ++k)
        for (auto g : gens) {
            std::size_t e = compose(out[k], g);
            if (seen.insert(e).second) out.push_back(e);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t RootSystem::chamber_of(const RationalVector& x) const {
    if (x.size() != d_->n) throw DimensionMismatch("point has wrong dimension");
    std::vector<int> s(d_->roots.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
        s[j] = sgn(dot(d_->roots[j], x));
        if (s[j] == 0) throw PreconditionError("point " + to_string(x) + " is not regular");
    }
    return d_->chamber_index.at(s);
}

std::optional<std::size_t> RootSystem::chamber_from_signs(const std::vector<int>& signs) const {
    auto it = d_->chamber_index.find(signs);
    if (it == d_->chamber_index.end()) return std::nullopt;
    return it->second;
}

std::size_t RootSystem::length(std::size_t c1, std::size_t c2) const {
    const auto& a = d_->chamber_signs.at(c1);
    const auto& b = d_->chamber_signs.at(c2);
    std::size_t l = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (d_->positive[j] && a[j] != b[j]) ++l;
    return l;
}

std::vector<std::size_t> RootSystem::chamber_simple_roots(std::size_t c) const {
    std::vector<std::size_t> out;
    for (auto i : d_->simple) out.push_back(d_->W.at(c).root_perm[i]);
    return out;
}

std::vector<RationalVector> RootSystem::chamber_rays(std::size_t c) const {
    std::vector<RationalVector> out;
    for (auto k : d_->chamber_ray_ids.at(c)) out.push_back(d_->ray_vectors[k]);
    return out;
}

Cone RootSystem::chamber_cone(std::size_t c) const {
    std::vector<RationalVector> ineqs;
    for (auto r : chamber_simple_roots(c)) ineqs.push_back(d_->roots[r]);
    return Cone::from_inequalities(d_->n, ineqs);
}

std::size_t RootSystem::across(std::size_t c, std::size_t r) const {
    auto walls = chamber_simple_roots(c);
    if (std::find(walls.begin(), walls.end(), r) == walls.end() &&
        std::find(walls.begin(), walls.end(), d_->negative_of.at(r)) == walls.end())
        throw PreconditionError("root is not a wall of the chamber");
    return compose(reflection(r), c);
}

RationalVector RootSystem::delta(std::size_t c) const {
    RationalVector s(d_->n);
    const auto& sg = d_->chamber_signs.at(c);
    for (std::size_t j = 0; j < sg.size(); ++j)
        if (sg[j] > 0) s += d_->coroots[j];
    return Rational(1, 2) * s;
}

RationalVector RootSystem::rho(std::size_t c) const {
    RationalVector s(d_->n);
    const auto& sg = d_->chamber_signs.at(c);
    for (std::size_t j = 0; j < sg.size(); ++j)
        if (sg[j] > 0) s += d_->roots[j];
    return Rational(1, 2) * s;
}

long RootSystem::chamber_psi(std::size_t c, const RationalVector& x, const RationalVector& lambda) const {
    if (x.size() != d_->n || lambda.size() != d_->n) throw DimensionMismatch("argument has wrong dimension");
    for (const auto& l : d_->lineality)
        if (dot(lambda, l) != 0) return 0;
    const auto& e = d_->W.at(c);
    std::vector<Rational> a, b;
    for (std::size_t i = 0; i < d_->simple.size(); ++i) {
        a.push_back(dot(d_->roots[e.root_perm[d_->simple[i]]], x));
        b.push_back(dot(lambda, d_->ray_vectors[d_->chamber_ray_ids[c][i]]));
    }
    long v = psi_simplicial(a, b);
    return d_->lineality.size() % 2 ? -v : v;
}

std::vector<long> RootSystem::chamber_psi_values(const RationalVector& x, const RationalVector& lambda) const {
    if (x.size() != d_->n || lambda.size() != d_->n) throw DimensionMismatch("argument has wrong dimension");
    std::vector<long> out(d_->W.size(), 0);
    for (const auto& l : d_->lineality)
        if (dot(lambda, l) != 0) return out;
    std::vector<bool> xs(d_->roots.size()), ls(d_->ray_vectors.size());
    for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = dot(d_->roots[j], x) >= 0;
    for (std::size_t k = 0; k < ls.size(); ++k) ls[k] = dot(lambda, d_->ray_vectors[k]) >= 0;
    long base = d_->lineality.size() % 2 ? -1 : 1;
    for (std::size_t c = 0; c < out.size(); ++c) {
        const auto& perm = d_->W[c].root_perm;
        const auto& ids = d_->chamber_ray_ids[c];
        long v = base;
        for (std::size_t i = 0; i < d_->simple.size() && v; ++i) {
            bool in_x = xs[perm[d_->simple[i]]], in_l = ls[ids[i]];
            if (in_x == in_l) v = 0;
            else if (in_l) v = -v;
        }
        out[c] = v;
    }
    return out;
}

bool RootSystem::is_regular(const RationalVector& x) const {
    for (const auto& r : d_->roots)
        if (dot(r, x) == 0) return false;
    return true;
}

bool RootSystem::is_R_regular(const RationalVector& lambda) const {
    for (const auto& w : d_->ray_orbit)
        if (dot(lambda, w) == 0) return false;
    return true;
}

bool RootSystem::is_Rvee_regular(const RationalVector& x) const { return dual().is_R_regular(x); }

RationalMatrix RootSystem::invariant_form() const {
    RationalMatrix g(d_->n, d_->n);
    for (const auto& r : d_->roots)
        for (std::size_t a = 0; a < d_->n; ++a)
            for (std::size_t b = 0; b < d_->n; ++b) g(a, b) += r[a] * r[b];
    return g;
}

RationalMatrix RootSystem::dual_invariant_form() const {
    RationalMatrix g(d_->n, d_->n);
    for (const auto& r : d_->coroots)
        for (std::size_t a = 0; a < d_->n; ++a)
            for (std::size_t b = 0; b < d_->n; ++b) g(a, b) += r[a] * r[b];
    return g;
}

const WallSystem& RootSystem::wall_system(std::size_t r) const {
    std::size_t key = d_->positive.at(r) ? r : d_->negative_of[r];
    {
        std::lock_guard<std::mutex> lock(d_->cache_mutex);
        auto it = d_->walls.find(key);
        if (it != d_->walls.end()) return *it->second;
    }
    auto ws = std::make_shared<const WallSystem>(make_wall_system(*this, key));
    std::lock_guard<std::mutex> lock(d_->cache_mutex);
    return *d_->walls.emplace(key, std::move(ws)).first->second;
}

std::size_t Subsystem::coarsen(const RootSystem& parent, std::size_t c) const {
    const auto& s = parent.chamber_signs(c);
    std::vector<int> sub;
    for (auto i : parent_roots) sub.push_back(s[i]);
    return *system.chamber_from_signs(sub);
}

RationalVector WallSystem::to_local(const RationalVector& y) const {
    auto c = solve_linear(basis_matrix, y);
    if (!c) throw PreconditionError("point " + to_string(y) + " is not on the wall");
    return *c;
}

RationalVector WallSystem::from_local(const RationalVector& y) const { return basis_matrix * y; }

RationalVector WallSystem::restrict_form(const RationalVector& lambda) const {
    RationalVector out(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) out[j] = dot(lambda, basis[j]);
    return out;
}

std::size_t WallSystem::chamber_below(const RootSystem& parent, std::size_t c) const {
    const auto& s = parent.chamber_signs(c);
    std::vector<int> sub;
    for (auto i : parent_roots) sub.push_back(s[i]);
    return *system.chamber_from_signs(sub);
}

Subsystem make_subsystem(const RootSystem& r, const std::vector<std::size_t>& roots, std::size_t base_chamber,
                         const std::string& label) {
    std::vector<RationalVector> rs, cs;
    std::vector<bool> pos;
    const auto& s = r.chamber_signs(base_chamber);
    for (auto i : roots) {
        rs.push_back(r.roots()[i]);
        cs.push_back(r.coroots()[i]);
        pos.push_back(s[i] > 0);
    }
    return Subsystem{RootSystem::from_roots(r.dim(), rs, cs, pos, label), roots};
}

Subsystem subsystem_omega(const RootSystem& r, const RationalVector& omega, std::size_t base_chamber) {
    if (omega.is_zero() || !std::binary_search(r.ray_orbit().begin(), r.ray_orbit().end(), primitive(omega)))
        throw PreconditionError("point " + to_string(omega) + " is not on a 1-dimensional chamber face");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r.root_count(); ++i)
        if (dot(r.roots()[i], omega) == 0) idx.push_back(i);
    return make_subsystem(r, idx, base_chamber, "");
}

std::vector<RationalVector> simple_coroots(const RootSystem& r) {
    std::vector<RationalVector> out;
    for (auto i : r.simple()) out.push_back(r.coroots()[i]);
    return out;
}

std::vector<RationalVector> simple_roots(const RootSystem& r) {
    std::vector<RationalVector> out;
    for (auto i : r.simple()) out.push_back(r.roots()[i]);
    return out;
}

std::vector<RationalVector> fundamental_weights(const RootSystem& r) { return r.dual().fundamental_coweights(); }

int coroot_character(const RootSystem& r, const SignCharacter& chi, std::size_t root) {
    if (chi.values.size() != r.rank()) throw DimensionMismatch("character needs one value per simple coroot");
    return chi.evaluate(*lattice_coordinates(simple_coroots(r), r.coroots().at(root)));
}

int root_character(const RootSystem& r, const SignCharacter& chi, std::size_t root) {
    if (chi.values.size() != r.rank()) throw DimensionMismatch("character needs one value per simple root");
    return chi.evaluate(*lattice_coordinates(simple_roots(r), r.roots().at(root)));
}

Subsystem subsystem_sign_coroot(const RootSystem& r, const SignCharacter& chi, std::size_t base_chamber) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r.root_count(); ++i)
        if (coroot_character(r, chi, i) == 1) idx.push_back(i);
    return make_subsystem(r, idx, base_chamber, "");
}

Subsystem subsystem_sign_root(const RootSystem& r, const SignCharacter& chi, std::size_t base_chamber) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r.root_count(); ++i)
        if (root_character(r, chi, i) == 1) idx.push_back(i);
    return make_subsystem(r, idx, base_chamber, "");
}

Subsystem subsystem_two(const RootSystem& r, std::size_t chamber) {
    auto dl = r.delta(chamber);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r.root_count(); ++i) {
        Rational v = dot(r.roots()[i], dl);
        if (v.get_den() == 1 && mpz_even_p(v.get_num_mpz_t())) idx.push_back(i);
    }
    return make_subsystem(r, idx, chamber, "");
}

WallSystem make_wall_system(const RootSystem& r, std::size_t root) {
    if (root >= r.root_count()) throw std::invalid_argument("not a root index");
    if (!r.minus_one_in_W()) throw MinusOneNotInWeylGroup("wall systems need -1 in the Weyl group");
    std::size_t n = r.dim();
    const auto& alpha = r.roots()[root];
    std::vector<RationalVector> basis;
    for (const auto& b : kernel_basis(RationalMatrix::from_rows({alpha}, n))) basis.push_back(primitive(b));
    RationalMatrix bm = RationalMatrix::from_columns(basis, n);
    std::vector<std::size_t> parent;
    std::vector<RationalVector> rs, cs;
    std::vector<bool> pos;
    for (std::size_t i = 0; i < r.root_count(); ++i) {
        if (dot(alpha, r.coroots()[i]) != 0) continue;
        parent.push_back(i);
        RationalVector res(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) res[j] = dot(r.roots()[i], basis[j]);
        rs.push_back(res);
        cs.push_back(*solve_linear(bm, r.coroots()[i]));
        pos.push_back(r.is_positive(i));
    }
    std::string lbl = r.label().empty() ? "" : r.label() + "/wall";
    return WallSystem{RootSystem::from_roots(basis.size(), rs, cs, pos, lbl), parent, basis, bm};
}

}  // namespace dsc
