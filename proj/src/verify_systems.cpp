#include "dsc/verify.hpp"

#include <filesystem>
#include <fstream>

namespace dsc::detail {

namespace {

std::string xl(const RationalVector& x, const RationalVector& l) {
    return "x=" + to_string(x) + " lambda=" + to_string(l);
}

std::string chi_string(const SignCharacter& chi) {
    std::string s;
    for (int v : chi.values) s += v > 0 ? '+' : '-';
    return s;
}

// Points of the hyperplane omega^perp in X*, one per open cell cut out by the other rays.
std::vector<RationalVector> wall_cells(const RootSystem& r, const RationalVector& om) {
    std::size_t n = r.dim();
    auto e = kernel_basis(RationalMatrix::from_rows({om}, n));
    std::vector<RationalVector> forms;
    for (const auto& other : r.ray_orbit()) {
        if (rank({om, other}, n) == 1) continue;
        RationalVector f(e.size());
        for (std::size_t k = 0; k < e.size(); ++k) f[k] = dot(e[k], other);
        forms.push_back(f);
    }
    std::vector<RationalVector> out;
    for (const auto& p : arrangement_cells(e.size(), forms)) {
        bool open = true;
        for (const auto& f : forms) open = open && dot(f, p) != 0;
        if (!open) continue;
        RationalVector l(n);
        for (std::size_t k = 0; k < e.size(); ++k) l += p[k] * e[k];
        out.push_back(l);
    }
    return out;
}

}  // namespace

void chamber_sums(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&) {
    auto r = RootSystem::from_type(system);

    if (!r.minus_one_in_W()) {
        std::size_t count = cases ? cases : 500;
        for (std::size_t k = 0; k < count; ++k) {
            auto x = random_regular(r, rng), l = random_R_regular(r, rng);
            auto c0 = static_cast<std::size_t>(rng.integer(0, static_cast<long>(r.order()) - 1));
            rec.equal(psi_R(r, c0, x, l), 0, "vanishing-without-minus-one",
                      [&] { return "c0=" + r.word(c0) + " " + xl(x, l); });
        }
    }

    for (int k = 0; k < 5; ++k) {
        auto x = rng.integer_vector(r.dim(), 3), l = rng.integer_vector(r.dim(), 3);
        long base = psi_R(r, 0, x, l);
        for (std::size_t w = 0; w < r.order(); ++w) {
            auto in = [&] { return "w=" + r.word(w) + " " + xl(x, l); };
            rec.equal(psi_R(r, w, x, l), r.element(w).sign() * base, "base-chamber-sign", in);
            auto wi = r.element(w).inverse;
            rec.equal(psi_R(r, w, x, l), psi_R(r, 0, r.act(wi, x), r.act_dual(wi, l)), "equivariance", in);
        }
    }

    // Crossing a hyperplane omega^perp in the form variable, for every ray omega, every chamber
    // whose closure contains it and every open cell of the hyperplane.
    const bool small = r.rank() <= 2;
    const std::size_t points = small ? 10 : 1;
    for (const auto& om : r.ray_orbit()) {
        bool coroot_line = false;
        for (const auto& c : r.coroots()) coroot_line = coroot_line || rank({c, om}, r.dim()) == 1;
        auto cells = wall_cells(r, om);
        for (std::size_t c0 = 0; c0 < r.order(); ++c0) {
            if (!closure_contains(r, c0, om)) continue;
            auto sub = subsystem_omega(r, om, c0);
            for (const auto& mid : cells) {
                Rational step = 1;
                for (const auto& other : r.ray_orbit()) {
                    Rational m = dot(om, other);
                    if (rank({om, other}, r.dim()) == 2 && m != 0)
                        step = std::min<Rational>(step, abs(dot(mid, other) / m) / 2);
                }
                RationalVector l = mid + step * om, l2 = mid - step * om;
                for (std::size_t k = 0; k < points; ++k) {
                    auto x = random_regular(r, rng);
                    long expected = coroot_line ? 2 * psi_R(sub.system, 0, x, mid) : 0;
                    rec.equal(psi_R(r, c0, x, l) - psi_R(r, c0, x, l2), expected, "form-hyperplane-crossing", [&] {
                        return "c0=" + r.word(c0) + " omega=" + to_string(om) + " " + xl(x, l) +
                               " lambda'=" + to_string(l2);
                    });
                }
            }
            if (!small) break;
        }
    }

    // Sums twisted by sign characters of the coroot and root lattices.
    for (const auto& chi : all_characters(r.rank())) {
        bool lifts_coroot = coroot_character_lifts(r, chi), lifts_root = root_character_lifts(r, chi);
        for (std::size_t k = 0; k < 20; ++k) {
            std::size_t c0 = k % r.order();
            RationalVector x, l;
            do x = random_regular(r, rng);
            while (!r.is_Rvee_regular(x));
            do l = random_R_regular(r, rng);
            while (!r.dual().is_regular(l));
            auto in = [&] { return "chi=" + chi_string(chi) + " c0=" + r.word(c0) + " " + xl(x, l); };
            long tc = twisted_sum_coroot(r, c0, chi, x, l);
            rec.equal(tc, psi_R(subsystem_sign_coroot(r, chi, c0).system, 0, x, l), "coroot-twisted-sum", in);
            if (!lifts_coroot) rec.equal(tc, 0, "coroot-twisted-sum/vanishing", in);
            long tr = twisted_sum_root(r, c0, chi, x, l);
            rec.equal(tr, psi_R(subsystem_sign_root(r, chi, c0).system, 0, x, l), "root-twisted-sum", in);
            if (!lifts_root) rec.equal(tr, 0, "root-twisted-sum/vanishing", in);
        }
    }
}

void wall_crossing(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&) {
    auto r = RootSystem::from_type(system);

    // Crossing a wall Y in the point variable: every adjacent pair across Y, for every c0 having Y
    // as a wall, oriented towards c0.
    std::vector<std::size_t> bases;
    if (r.order() <= 12) {
        for (std::size_t c = 0; c < r.order(); ++c) bases.push_back(c);
    } else {
        for (int k = 0; k < 4; ++k) bases.push_back(static_cast<std::size_t>(rng.integer(0, static_cast<long>(r.order()) - 1)));
    }
    const std::size_t points = cases ? cases : 10;
    for (std::size_t c0 : bases) {
        for (std::size_t a = 0; a < r.root_count(); ++a) {
            if (!r.is_positive(a)) continue;
            if (!is_wall(r, c0, a)) continue;
            const auto& ws = r.wall_system(a);
            std::size_t s = r.reflection(a);
            int side = r.chamber_signs(c0)[a];
            for (std::size_t c = 0; c < r.order(); ++c) {
                if (!is_wall(r, c, a) || r.chamber_signs(c)[a] != side) continue;
                for (std::size_t k = 0; k < points; ++k) {
                    auto p = random_regular(r, rng);
                    auto x = r.act(r.compose(c, r.element(r.chamber_of(p)).inverse), p);
                    auto x2 = r.act(s, x);
                    RationalVector y = Rational(1, 2) * (x + x2);
                    auto l = random_R_regular(r, rng);
                    auto in = [&] { return "c0=" + r.word(c0) + " " + xl(x, l) + " x'=" + to_string(x2); };
                    rec.truth(r.chamber_of(x2) == r.across(c, a), "point-wall-crossing/adjacent", in);
                    rec.equal(psi_R(r, c0, x, l) - psi_R(r, c0, x2, l),
                              2 * psi_R(ws.system, ws.chamber_below(r, c0), ws.to_local(y), ws.restrict_form(l)),
                              "point-wall-crossing", in);
                }
            }
        }
    }

    if (!r.minus_one_in_W()) return;
    auto d = r.dual();
    long sq = r.q() % 2 ? -1 : 1;
    const std::size_t count = cases ? cases : 100;
    for (std::size_t k = 0; k < count; ++k) {
        RationalVector x, l;
        do x = random_regular(r, rng);
        while (!r.is_Rvee_regular(x));
        do l = random_R_regular(r, rng);
        while (!d.is_regular(l));
        std::size_t c0 = k % r.order();
        rec.equal(psi_R(r, c0, x, l), sq * psi_R(d, c0, l, x), "coroot-duality",
                  [&] { return "c0=" + r.word(c0) + " " + xl(x, l); });
    }
}

void stable_constants(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions& opts) {
    auto r = RootSystem::from_type(system);
    if (!r.minus_one_in_W()) return;

    if (r.order() <= 12) {
        for (const auto& l : arrangement_cells(r.dim(), r.ray_orbit())) {
            if (!r.is_R_regular(l)) continue;
            auto table = cbar_table(r, l);
            for (std::size_t c = 0; c < r.order(); ++c) {
                auto x = r.chamber_point(c);
                rec.equal(m_R(r, x, l), table[c], "chamber-sum-equals-recursion",
                          [&] { return xl(x, l); });
            }
        }
    } else {
        std::size_t count = cases ? cases : 200;
        for (std::size_t k = 0; k < count; ++k) {
            auto x = random_regular(r, rng), l = random_R_regular(r, rng);
            rec.equal(m_R(r, x, l), cbar(r, x, l), "chamber-sum-equals-recursion", [&] { return xl(x, l); });
        }
    }

    auto d = d_table(r);
    auto dv = d_vee_table(r);
    long sq = r.q() % 2 ? -1 : 1;
    for (std::size_t w = 0; w < r.order(); ++w) {
        auto in = [&] { return "w=" + r.word(w); };
        rec.equal(dv.values[w], d.values[w], "d-coroot-symmetry", in);
        rec.equal(d.values[r.element(w).inverse], sq * r.element(w).sign() * d.values[w], "d-inverse-symmetry", in);
    }
    if (system == "B2") rec.equal(d.values[r.longest()], 0, "d-longest-vanishes", [] { return std::string("w=w0"); });

    if (opts.golden_dir.empty()) return;
    auto path = std::filesystem::path(opts.golden_dir) / golden_file_name(system);
    if (!std::filesystem::exists(path)) return;
    rec.guard("golden/" + path.filename().string(), [&] {
        std::ifstream in(path);
        auto g = nlohmann::json::parse(in);
        std::size_t base = r.from_word(g.at("base_chamber").get<std::string>());
        auto table = base == 0 ? d : d_table(r, base);
        auto where = [&] { return "file=" + path.filename().string(); };
        rec.check(g.at("system").get<std::string>() == table.system, "golden/system", where, table.system,
                  [&] { return g.at("system").dump(); });
        rec.equal(g.at("q").get<long>(), static_cast<long>(r.q()), "golden/q", where);
        const auto& entries = g.at("table");
        rec.equal(static_cast<long>(entries.size()), static_cast<long>(r.order()), "golden/size", where);
        for (std::size_t w = 0; w < r.order(); ++w) {
            auto word = r.word(w);
            auto it = entries.find(word);
            rec.check(it != entries.end() && it->is_number_integer() && it->get<long>() == table.values[w],
                      "golden/" + word, where, std::to_string(table.values[w]),
                      [&] { return it == entries.end() ? std::string("missing") : it->dump(); });
        }
    });
}

}  // namespace dsc::detail
