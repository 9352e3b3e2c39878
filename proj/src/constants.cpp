#include "dsc/constants.hpp"

#include "dsc/random.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>

namespace dsc {

namespace {

void require_dims(const RootSystem& r, const RationalVector& x, const RationalVector& lambda) {
    if (x.size() != r.dim() || lambda.size() != r.dim()) throw DimensionMismatch("argument has wrong dimension");
}

bool is_regular_form(const RootSystem& r, const RationalVector& lambda) {
    for (const auto& c : r.coroots())
        if (dot(lambda, c) == 0) return false;
    return true;
}

long signed_sum(const RootSystem& r, std::size_t c0, const std::vector<long>& psi,
                const std::vector<int>* root_twist) {
    const auto& s0 = r.chamber_signs(c0);
    int e0 = r.element(c0).sign();
    long total = 0;
    for (std::size_t c = 0; c < psi.size(); ++c) {
        if (psi[c] == 0) continue;
        int f = e0 * r.element(c).sign();
        if (root_twist) {
            const auto& s = r.chamber_signs(c);
            for (std::size_t j = 0; j < s.size(); ++j)
                if (s[j] > 0 && s0[j] < 0) f *= (*root_twist)[j];
        }
        total += f * psi[c];
    }
    return total;
}

std::vector<std::size_t> two_divisible_roots(const RootSystem& r, std::size_t c) {
    auto dl = r.delta(c);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r.root_count(); ++i) {
        Rational v = dot(r.roots()[i], dl);
        if (v.get_den() == 1 && mpz_even_p(v.get_num_mpz_t())) idx.push_back(i);
    }
    return idx;
}

std::set<RationalVector> orbit(const RootSystem& r, const std::vector<std::size_t>& group, const RationalVector& l) {
    std::set<RationalVector> out;
    for (auto u : group) out.insert(r.act_dual(u, l));
    return out;
}

// W(tau, C, lambda) = {w : w^-1 lambda in W_C tau}.
std::vector<std::size_t> coset(const RootSystem& r, const RationalVector& tau, std::size_t chamber,
                               const RationalVector& lambda) {
    auto wc = r.reflection_subgroup(two_divisible_roots(r, chamber));
    auto orb = orbit(r, wc, tau);
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < r.order(); ++w)
        if (orb.count(r.act_dual(r.element(w).inverse, lambda))) out.push_back(w);
    return out;
}

void check_b_inputs(const RootSystem& r, const RationalVector& tau, std::size_t chamber, const RationalVector& lambda) {
    if (tau.size() != r.dim() || lambda.size() != r.dim()) throw DimensionMismatch("argument has wrong dimension");
    if (chamber >= r.chamber_count()) throw std::out_of_range("chamber index out of range");
    if (!is_regular_form(r, tau)) throw PreconditionError("tau " + to_string(tau) + " is not regular");
}

struct WallInputs {
    const WallSystem* ws;
    RationalVector y_local;
};

WallInputs check_wall_inputs(const RootSystem& r, std::size_t chamber, std::size_t alpha, const RationalVector& y) {
    if (alpha >= r.root_count()) throw std::out_of_range("root index out of range");
    const auto& s = r.chamber_signs(chamber);
    for (std::size_t j = 0; j < r.root_count(); ++j)
        if (s[j] > 0 && dot(r.roots()[alpha], r.coroots()[j]) < 0)
            throw PreconditionError("root is not in the closed dual chamber");
    if (y.size() != r.dim()) throw DimensionMismatch("argument has wrong dimension");
    if (dot(r.roots()[alpha], y) != 0) throw PreconditionError("point " + to_string(y) + " is not on the wall");
    const auto& ws = r.wall_system(alpha);
    auto yl = ws.to_local(y);
    if (!ws.system.is_Rvee_regular(yl))
        throw PreconditionError("point " + to_string(y) + " is not coroot-regular for the wall system");
    return {&ws, yl};
}

std::mutex cache_mutex;
std::map<std::string, std::vector<long>>& cbar_cache() {
    static std::map<std::string, std::vector<long>> cache;
    return cache;
}

}  // namespace

long psi_R(const RootSystem& r, std::size_t c0, const RationalVector& x, const RationalVector& lambda) {
    require_dims(r, x, lambda);
    if (c0 >= r.chamber_count()) throw std::out_of_range("chamber index out of range");
    return signed_sum(r, c0, r.chamber_psi_values(x, lambda), nullptr);
}

long m_R(const RootSystem& r, const RationalVector& x, const RationalVector& lambda) {
    require_dims(r, x, lambda);
    if (!r.is_R_regular(lambda)) throw PreconditionError("lambda " + to_string(lambda) + " is not R-regular");
    return psi_R(r, r.chamber_of(x), x, lambda);
}

std::vector<long> cbar_table(const RootSystem& r, const RationalVector& lambda) {
    if (lambda.size() != r.dim()) throw DimensionMismatch("argument has wrong dimension");
    if (!r.minus_one_in_W()) throw MinusOneNotInWeylGroup("-1 is not in the Weyl group");
    if (!is_regular_form(r, lambda)) throw PreconditionError("lambda " + to_string(lambda) + " is not regular");
    std::string key = r.key() + "|" + to_string(lambda);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cbar_cache().find(key);
        if (it != cbar_cache().end()) return it->second;
    }
    std::vector<long> val(r.chamber_count(), 0);
    if (r.root_count() > 0) {
        std::vector<bool> known(r.chamber_count(), false);
        std::deque<std::size_t> queue;
        for (std::size_t c = 0; c < r.chamber_count(); ++c)
            for (const auto& ray : r.chamber_rays(c))
                if (dot(lambda, ray) > 0 && !known[c]) {
                    known[c] = true;
                    queue.push_back(c);
                }
        while (!queue.empty()) {
            std::size_t c = queue.front();
            queue.pop_front();
            RationalVector x = r.chamber_point(c);
            for (auto a : r.chamber_simple_roots(c)) {
                const auto& ws = r.wall_system(a);
                Rational half = dot(r.roots()[a], x) / 2;
                RationalVector y = x - half * r.coroots()[a];
                long wall = cbar(ws.system, ws.to_local(y), ws.restrict_form(lambda));
                std::size_t c2 = r.across(c, a);
                long v = 2 * wall - val[c];
                if (!known[c2]) {
                    known[c2] = true;
                    val[c2] = v;
                    queue.push_back(c2);
                } else if (val[c2] != v) {
                    throw std::logic_error("wall recursion is inconsistent for lambda " + to_string(lambda));
                }
            }
        }
        if (std::find(known.begin(), known.end(), false) != known.end())
            throw std::logic_error("wall recursion did not reach every chamber");
    } else {
        val.assign(1, 1);
    }
    std::lock_guard<std::mutex> lock(cache_mutex);
    cbar_cache().emplace(key, val);
    return val;
}

long cbar(const RootSystem& r, const RationalVector& x, const RationalVector& lambda) {
    require_dims(r, x, lambda);
    std::size_t c = r.chamber_of(x);
    return cbar_table(r, lambda)[c];
}

BasePoints base_points(const RootSystem& r, std::uint64_t seed) {
    Rng rng(seed);
    auto coefficient = [&rng] {
        Rational c(rng.integer(9, 23), 16);
        c.canonicalize();
        return c;
    };
    auto weights = fundamental_weights(r);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        BasePoints p{RationalVector(r.dim()), RationalVector(r.dim()), seed};
        for (const auto& w : r.fundamental_coweights()) p.x0 += coefficient() * w;
        for (const auto& w : weights) p.lambda0 += coefficient() * w;
        if (r.is_Rvee_regular(p.x0) && r.is_R_regular(p.lambda0)) return p;
    }
    throw std::runtime_error("no generic base points found");
}

DTable d_table(const RootSystem& r, std::size_t c0, std::uint64_t seed) {
    if (!r.minus_one_in_W()) throw MinusOneNotInWeylGroup("-1 is not in the Weyl group of " + r.label());
    DTable t{r.label(), c0, base_points(r, seed), {}};
    RationalVector x0 = r.act(c0, t.points.x0), l0 = r.act_dual(c0, t.points.lambda0);
    for (std::size_t w = 0; w < r.order(); ++w) t.values.push_back(psi_R(r, c0, x0, r.act_dual(w, l0)));
    return t;
}

DTable d_vee_table(const RootSystem& r, std::size_t c0, std::uint64_t seed) {
    if (!r.minus_one_in_W()) throw MinusOneNotInWeylGroup("-1 is not in the Weyl group of " + r.label());
    DTable t{r.label(), c0, base_points(r, seed), {}};
    auto d = r.dual();
    RationalVector x0 = r.act(c0, t.points.x0), l0 = r.act_dual(c0, t.points.lambda0);
    for (std::size_t w = 0; w < r.order(); ++w) t.values.push_back(psi_R(d, c0, l0, r.act(w, x0)));
    return t;
}

long twisted_sum_coroot(const RootSystem& r, std::size_t c0, const SignCharacter& chi, const RationalVector& x,
                        const RationalVector& lambda) {
    require_dims(r, x, lambda);
    if (!r.is_regular(x)) throw PreconditionError("point " + to_string(x) + " is not regular");
    std::vector<int> tw(r.root_count());
    for (std::size_t j = 0; j < tw.size(); ++j) tw[j] = coroot_character(r, chi, j);
    return signed_sum(r, c0, r.chamber_psi_values(x, lambda), &tw);
}

long twisted_sum_root(const RootSystem& r, std::size_t c0, const SignCharacter& chi, const RationalVector& x,
                      const RationalVector& lambda) {
    require_dims(r, x, lambda);
    if (!r.is_regular(x)) throw PreconditionError("point " + to_string(x) + " is not regular");
    std::vector<int> tw(r.root_count());
    for (std::size_t j = 0; j < tw.size(); ++j) tw[j] = root_character(r, chi, j);
    return signed_sum(r, c0, r.chamber_psi_values(x, lambda), &tw);
}

bool coroot_character_lifts(const RootSystem& r, const SignCharacter& chi) {
    return sign_character_lifts(chi, simple_coroots(r), r.fundamental_coweights());
}

bool root_character_lifts(const RootSystem& r, const SignCharacter& chi) {
    return sign_character_lifts(chi, simple_roots(r), fundamental_weights(r));
}

long b_constant(const RootSystem& r, const BQuery& q) {
    check_b_inputs(r, q.tau, q.chamber, q.lambda);
    if (q.x.size() != r.dim()) throw DimensionMismatch("argument has wrong dimension");
    if (!r.is_Rvee_regular(q.x)) throw PreconditionError("point " + to_string(q.x) + " is not coroot-regular");
    auto ws = coset(r, q.tau, q.chamber, q.lambda);
    if (ws.empty()) throw PreconditionError("lambda " + to_string(q.lambda) + " is not in the orbit of tau");
    auto d = r.dual();
    auto psi = d.chamber_psi_values(q.lambda, q.x);
    std::size_t cx = r.chamber_of(q.x);
    long total = 0;
    for (auto w : ws) {
        std::size_t wc = r.compose(w, q.chamber);
        total += r.epsilon(cx, wc) * psi[wc];
    }
    return r.q() % 2 ? -total : total;
}

long b_sub(const RootSystem& r, const RationalVector& tau, std::size_t chamber, std::size_t alpha,
           const RationalVector& y, const RationalVector& lambda) {
    check_b_inputs(r, tau, chamber, lambda);
    auto [ws, yl] = check_wall_inputs(r, chamber, alpha, y);
    auto cos = coset(r, tau, chamber, lambda);
    if (cos.empty()) throw PreconditionError("lambda " + to_string(lambda) + " is not in the orbit of tau");
    auto wa = r.reflection_subgroup(ws->parent_roots);
    std::vector<std::size_t> both;
    std::set_intersection(wa.begin(), wa.end(), cos.begin(), cos.end(), std::back_inserter(both));
    const auto& sys = ws->system;
    auto lt = ws->restrict_form(lambda);
    auto psi = sys.dual().chamber_psi_values(lt, yl);
    std::size_t cy = sys.chamber_of(yl);
    long total = 0;
    for (auto w : both) {
        std::size_t wc = ws->chamber_below(r, r.compose(w, chamber));
        total += sys.epsilon(cy, wc) * psi[wc];
    }
    return sys.q() % 2 ? -total : total;
}

long b_sub_via_wall(const RootSystem& r, const RationalVector& tau, std::size_t chamber, std::size_t alpha,
                    const RationalVector& y, const RationalVector& lambda) {
    check_b_inputs(r, tau, chamber, lambda);
    auto [ws, yl] = check_wall_inputs(r, chamber, alpha, y);
    if (coset(r, tau, chamber, lambda).empty())
        throw PreconditionError("lambda " + to_string(lambda) + " is not in the orbit of tau");
    auto wa = r.reflection_subgroup(ws->parent_roots);
    auto wc = r.reflection_subgroup(two_divisible_roots(r, chamber));
    for (const auto& t : orbit(r, wc, tau)) {
        if (!orbit(r, wa, t).count(lambda)) continue;
        BQuery q{ws->restrict_form(t), ws->chamber_below(r, chamber), yl, ws->restrict_form(lambda)};
        return b_constant(ws->system, q);
    }
    return 0;
}

std::vector<std::size_t> chambers_with_compact_roots(const RootSystem& r, std::vector<std::size_t> compact) {
    std::sort(compact.begin(), compact.end());
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < r.chamber_count(); ++c)
        if (two_divisible_roots(r, c) == compact) out.push_back(c);
    return out;
}

long reindexed_constant(const RootSystem& r, const std::vector<std::size_t>& compact, std::size_t w,
             const RationalVector& lambda, std::size_t positive_chamber) {
    auto cs = chambers_with_compact_roots(r, compact);
    if (cs.empty()) throw PreconditionError("no chamber has the given set of compact roots");
    if (w >= r.order()) throw std::out_of_range("Weyl group element out of range");
    BQuery q{lambda, cs.front(), coregular_point(r, positive_chamber), r.act_dual(w, lambda)};
    return b_constant(r, q);
}

RationalVector coregular_point(const RootSystem& r, std::size_t c, std::uint64_t seed) {
    if (c >= r.chamber_count()) throw std::out_of_range("chamber index out of range");
    return r.act(c, base_points(r, seed).x0);
}

}  // namespace dsc
