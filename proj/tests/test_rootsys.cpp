#include "doctest.h"

#include "dsc/random.hpp"
#include "dsc/rootsys.hpp"

#include <set>

using namespace dsc;

namespace {

bool closure_contains(const RootSystem& r, std::size_t c, const RationalVector& x) {
    const auto& s = r.chamber_signs(c);
    for (std::size_t j = 0; j < r.root_count(); ++j)
        if (s[j] > 0 && dot(r.roots()[j], x) < 0) return false;
    return true;
}

bool spans_coroot(const RootSystem& r, const RationalVector& omega) {
    for (const auto& c : r.coroots())
        if (primitive(c) == primitive(omega)) return true;
    return false;
}

}  // namespace

TEST_CASE("root and Weyl group counts") {
    struct Row {
        const char* type;
        std::size_t roots, order;
    };
    for (auto row : {Row{"A1", 2, 2}, Row{"A2", 6, 6}, Row{"B2", 8, 8}, Row{"G2", 12, 12}, Row{"A1xA1", 4, 4},
                     Row{"B3", 18, 48}, Row{"C3", 18, 48}, Row{"A3", 12, 24}, Row{"D4", 24, 192},
                     Row{"F4", 48, 1152}}) {
        auto r = RootSystem::from_type(row.type);
        CHECK(r.root_count() == row.roots);
        CHECK(r.order() == row.order);
        CHECK(r.chamber_count() == row.order);
        CHECK(r.spans());
        CHECK(r.length(0, r.longest()) == r.positive_count());
    }
    auto a = RootSystem::from_type("A1xA1");
    CHECK(dot(a.roots()[0], a.coroots()[1]) == 0);
    CHECK(dot(a.roots()[1], a.coroots()[0]) == 0);
    CHECK(RootSystem::from_type("A1").dim() == 1);
}

TEST_CASE("type strings, rank limit and custom Cartan matrices") {
    CHECK_THROWS_AS(RootSystem::from_type("B5"), UnsupportedType);
    CHECK_THROWS_AS(RootSystem::from_type("E6"), UnsupportedType);
    CHECK_THROWS_AS(RootSystem::from_type("G3"), UnsupportedType);
    CHECK_THROWS_AS(RootSystem::from_type("A1x"), UnsupportedType);
    CHECK(RootSystem::from_type("A5", 5).order() == 720);
    auto g = RootSystem::from_cartan({{2, -1}, {-3, 2}}, "custom");
    CHECK(g.root_count() == 12);
    CHECK_THROWS_AS(RootSystem::from_cartan({{2, -2}, {-2, 2}}, "affine"), std::invalid_argument);
    CHECK_THROWS_AS(RootSystem::from_cartan({{2, 0}, {-1, 2}}, "bad"), std::invalid_argument);
    CHECK_THROWS_AS(RootSystem::from_cartan({{2, 1}, {1, 2}}, "bad"), std::invalid_argument);
}

TEST_CASE("Weyl group elements") {
    for (const char* t : {"B2", "G2", "A3", "C3"}) {
        auto r = RootSystem::from_type(t);
        std::set<RationalVector> images;
        for (std::size_t w = 0; w < r.order(); ++w) {
            const auto& e = r.element(w);
            CHECK(determinant(e.matrix) == e.sign());
            CHECK(e.matrix * r.element(e.inverse).matrix == RationalMatrix::identity(r.dim()));
            CHECK(r.from_word(r.word(w)) == w);
            CHECK(r.length(0, w) == e.length());
            // Transpose-inverse permutes roots like the matrix permutes coroots.
            for (std::size_t j = 0; j < r.root_count(); ++j)
                CHECK(r.act_dual(w, r.roots()[j]) == r.roots()[e.root_perm[j]]);
        }
        CHECK(r.word(0) == "e");
    }
    auto b2 = RootSystem::from_type("B2");
    CHECK(b2.word(b2.longest()).size() == std::string("s1*s2*s1*s2").size());
}

TEST_CASE("chambers, lengths and signs") {
    auto a1 = RootSystem::from_type("A1");
    CHECK(a1.length(0, 1) == 1);
    CHECK(a1.epsilon(0, 0) == 1);
    auto b2 = RootSystem::from_type("B2");
    CHECK(b2.chamber_of(RationalVector{10, 7}) == 0);
    CHECK_THROWS_AS(b2.chamber_of(RationalVector{1, 0}), PreconditionError);
    Rng rng(19);
    for (const char* t : {"B2", "G2", "A3", "B3"}) {
        auto r = RootSystem::from_type(t);
        for (int k = 0; k < 40; ++k) {
            auto c1 = static_cast<std::size_t>(rng.integer(0, static_cast<long>(r.order()) - 1));
            auto c2 = static_cast<std::size_t>(rng.integer(0, static_cast<long>(r.order()) - 1));
            auto c3 = static_cast<std::size_t>(rng.integer(0, static_cast<long>(r.order()) - 1));
            CHECK(r.epsilon(c1, c2) * r.epsilon(c2, c3) == r.epsilon(c1, c3));
            CHECK(r.chamber_of(r.chamber_point(c1)) == c1);
            // The element carrying c1 to c2 is unique: chamber c is w_c C0.
            std::size_t w = r.compose(c2, r.element(c1).inverse);
            CHECK(r.compose(w, c1) == c2);
        }
    }
}

TEST_CASE("dual chambers") {
    for (const char* t : {"B2", "G2", "C3"}) {
        auto r = RootSystem::from_type(t);
        auto d = r.dual();
        REQUIRE(d.order() == r.order());
        for (std::size_t c = 0; c < r.order(); ++c) {
            CHECK(d.element(c).matrix == r.element(c).dual_matrix);
            CHECK(d.chamber_signs(c) == r.chamber_signs(c));
        }
        CHECK(d.dual().key() == r.key());
    }
}

TEST_CASE("delta and rho") {
    auto a1 = RootSystem::from_type("A1");
    CHECK(a1.delta(0) == Rational(1, 2) * a1.coroots()[0]);
    for (const char* t : {"B2", "G2"}) {
        auto r = RootSystem::from_type(t);
        for (std::size_t c = 0; c < r.order(); ++c) {
            CHECK(r.delta(c) == r.act(c, r.delta(0)));
            CHECK(r.rho(c) == r.act_dual(c, r.rho(0)));
            for (auto s : r.chamber_simple_roots(c)) CHECK(dot(r.roots()[s], r.delta(c)) == 1);
            CHECK(dot(r.rho(c), r.chamber_point(c)) > 0);
        }
    }
}

TEST_CASE("minus one and q") {
    CHECK(RootSystem::from_type("A1").q() == 1);
    CHECK(RootSystem::from_type("B2").q() == 3);
    CHECK(RootSystem::from_type("G2").q() == 4);
    CHECK(RootSystem::from_type("A1xA1").q() == 2);
    CHECK_FALSE(RootSystem::from_type("A2").minus_one_in_W());
    CHECK_FALSE(RootSystem::from_type("A3").minus_one_in_W());
    CHECK(RootSystem::from_type("D4").minus_one_in_W());
    CHECK_THROWS_AS(RootSystem::from_type("A2").q(), MinusOneNotInWeylGroup);
}

TEST_CASE("regularity notions") {
    auto a1 = RootSystem::from_type("A1");
    CHECK(a1.is_R_regular(RationalVector{3}));
    auto b2 = RootSystem::from_type("B2");
    RationalVector lam{0, 1};
    CHECK(dot(lam, b2.fundamental_coweights()[0]) == 0);
    CHECK_FALSE(b2.is_R_regular(lam));
    // In A2 the chamber rays are not coroot lines, so the two notions differ.
    auto a2 = RootSystem::from_type("A2");
    CHECK(dot(lam, a2.fundamental_coweights()[0]) == 0);
    CHECK_FALSE(a2.is_R_regular(lam));
    bool root_regular = true;
    for (const auto& c : a2.coroots()) root_regular = root_regular && dot(lam, c) != 0;
    CHECK(root_regular);
    Rng rng(4);
    for (const char* t : {"B2", "G2"}) {
        auto r = RootSystem::from_type(t);
        for (int k = 0; k < 200; ++k) {
            auto l = rng.integer_vector(2, 4);
            if (!r.is_R_regular(l)) continue;
            for (const auto& c : r.coroots()) CHECK(dot(l, c) != 0);
        }
    }
}

TEST_CASE("invariant forms") {
    for (const char* t : {"B2", "G2", "B3"}) {
        auto r = RootSystem::from_type(t);
        auto g = r.invariant_form(), h = r.dual_invariant_form();
        for (std::size_t w = 0; w < r.order(); ++w) {
            const auto& m = r.element(w).matrix;
            CHECK(m.transpose() * g * m == g);
            const auto& md = r.element(w).dual_matrix;
            CHECK(md.transpose() * h * md == h);
        }
        for (std::size_t k = 1; k <= r.dim(); ++k) {
            RationalMatrix minor(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) minor(i, j) = g(i, j);
            CHECK(determinant(minor) > 0);
        }
    }
}

TEST_CASE("chamber psi closed form matches the cone face sum") {
    Rng rng(31);
    for (const char* t : {"A1", "B2", "G2", "A2", "A1xA1", "B3"}) {
        auto r = RootSystem::from_type(t);
        for (std::size_t c = 0; c < r.order(); c += 1 + r.order() / 8) {
            auto cone = r.chamber_cone(c);
            for (int k = 0; k < 6; ++k) {
                auto x = rng.integer_vector(r.dim(), 2), lam = rng.integer_vector(r.dim(), 2);
                CHECK(r.chamber_psi(c, x, lam) == psi_face_sum(cone, x, lam));
            }
        }
        for (int k = 0; k < 10; ++k) {
            auto x = rng.integer_vector(r.dim(), 2), lam = rng.integer_vector(r.dim(), 2);
            auto all = r.chamber_psi_values(x, lam);
            for (std::size_t c = 0; c < r.order(); ++c) CHECK(all[c] == r.chamber_psi(c, x, lam));
        }
    }
    // Non-spanning subsystem: the chamber has a lineality space.
    auto b3 = RootSystem::from_type("B3");
    auto sub = subsystem_omega(b3, b3.fundamental_coweights()[0], 0);
    REQUIRE_FALSE(sub.system.spans());
    for (std::size_t c = 0; c < sub.system.order(); ++c) {
        auto cone = sub.system.chamber_cone(c);
        for (int k = 0; k < 8; ++k) {
            auto x = rng.integer_vector(3, 2), lam = rng.integer_vector(3, 2);
            if (k % 2) lam = sub.system.roots()[static_cast<std::size_t>(k) % sub.system.root_count()];
            CHECK(sub.system.chamber_psi(c, x, lam) == psi_face_sum(cone, x, lam));
            CHECK(sub.system.chamber_psi_values(x, lam)[c] == sub.system.chamber_psi(c, x, lam));
        }
    }
}

TEST_CASE("coarsening by a chamber ray preserves lengths") {
    for (const char* t : {"B2", "G2", "A1xA1", "B3"}) {
        auto r = RootSystem::from_type(t);
        for (const auto& om : r.ray_orbit()) {
            std::size_t base = 0;
            while (!closure_contains(r, base, om)) ++base;
            auto sub = subsystem_omega(r, om, base);
            std::vector<std::size_t> containing;
            for (std::size_t c = 0; c < r.order(); ++c)
                if (closure_contains(r, c, om)) containing.push_back(c);
            std::set<std::size_t> images;
            for (auto c : containing) images.insert(sub.coarsen(r, c));
            CHECK(images.size() == containing.size());
            CHECK(images.size() == sub.system.chamber_count());
            for (auto c1 : containing)
                for (auto c2 : containing)
                    CHECK(r.length(c1, c2) == sub.system.length(sub.coarsen(r, c1), sub.coarsen(r, c2)));
        }
    }
    auto a1 = RootSystem::from_type("A1");
    CHECK(subsystem_omega(a1, a1.ray_orbit()[0], 0).system.root_count() == 0);
    auto b2 = RootSystem::from_type("B2");
    // Coweight dual to the long simple root: only the short simple root survives.
    CHECK(subsystem_omega(b2, b2.fundamental_coweights()[0], 0).system.root_count() == 2);
    CHECK_THROWS_AS(subsystem_omega(b2, RationalVector{1, 1}, 0), PreconditionError);
}

TEST_CASE("parity and opposite-chamber statements for chamber rays") {
    for (const char* t : {"B2", "G2", "B3", "C3"}) {
        auto r = RootSystem::from_type(t);
        int odd_cases = 0, even_cases = 0;
        for (const auto& om : r.ray_orbit()) {
            std::size_t c0 = 0;
            while (!closure_contains(r, c0, om)) ++c0;
            auto sub = subsystem_omega(r, om, c0);
            std::size_t diff = r.positive_count() - sub.system.positive_count();
            bool coroot_line = spans_coroot(r, om);
            if (coroot_line) {
                CHECK(diff % 2 == 1);
                ++odd_cases;
            } else if (sub.system.minus_one_in_W()) {
                CHECK(diff % 2 == 0);
                ++even_cases;
            }
            // Opposite chamber: -omega in its closure, same coarse chamber.
            std::vector<std::size_t> opp;
            for (std::size_t c = 0; c < r.order(); ++c)
                if (closure_contains(r, c, -om) && sub.coarsen(r, c) == sub.coarsen(r, c0)) opp.push_back(c);
            REQUIRE(opp.size() == 1);
            CHECK(r.length(c0, opp[0]) == diff);
            if (!coroot_line) continue;
            std::size_t alpha = *r.find_coroot(r.coroots()[0]);
            for (std::size_t j = 0; j < r.root_count(); ++j)
                if (primitive(r.coroots()[j]) == primitive(om)) alpha = j;
            CHECK(r.chamber_signs(c0)[alpha] > 0);
            int qualifying = 0;
            for (std::size_t c = 0; c < r.order(); ++c) {
                if (r.chamber_signs(c)[alpha] < 0) continue;
                auto walls = r.chamber_simple_roots(c);
                if (std::find(walls.begin(), walls.end(), alpha) == walls.end()) continue;
                if (sub.coarsen(r, c) != sub.coarsen(r, c0)) continue;
                CHECK(2 * r.length(c0, c) == diff - 1);
                ++qualifying;
            }
            CHECK(qualifying > 0);
        }
        CHECK(odd_cases > 0);
        (void)even_cases;
    }
}

TEST_CASE("wall systems") {
    auto a1 = RootSystem::from_type("A1");
    const auto& w = a1.wall_system(0);
    CHECK(w.system.dim() == 0);
    CHECK(w.system.root_count() == 0);
    CHECK(w.system.order() == 1);
    for (const char* t : {"B2", "G2", "B3", "C3", "A1xA1"}) {
        auto r = RootSystem::from_type(t);
        for (std::size_t a = 0; a < r.root_count(); ++a) {
            const auto& ws = r.wall_system(a);
            CHECK(ws.system.dim() + 1 == r.dim());
            CHECK(ws.system.spans());
            CHECK(ws.system.minus_one_in_W());
            for (auto j : ws.parent_roots) CHECK(dot(r.roots()[a], r.coroots()[j]) == 0);
            if (r.dim() == 2) CHECK(ws.system.root_count() == 2);
        }
        CHECK(&r.wall_system(0) == &r.wall_system(r.negative_of(0)));
    }
    CHECK_THROWS_AS(make_wall_system(RootSystem::from_type("A2"), 0), MinusOneNotInWeylGroup);
}

TEST_CASE("sign subsystems") {
    auto b2 = RootSystem::from_type("B2");
    std::multiset<std::size_t> coroot_sizes, root_sizes;
    for (int a : {1, -1})
        for (int b : {1, -1}) {
            SignCharacter chi{{a, b}};
            coroot_sizes.insert(subsystem_sign_coroot(b2, chi, 0).system.root_count());
            root_sizes.insert(subsystem_sign_root(b2, chi, 0).system.root_count());
        }
    CHECK(coroot_sizes == std::multiset<std::size_t>{2, 2, 4, 8});
    CHECK(root_sizes == std::multiset<std::size_t>{2, 2, 4, 8});
    auto a1 = RootSystem::from_type("A1");
    CHECK(subsystem_sign_coroot(a1, SignCharacter{{-1}}, 0).system.root_count() == 0);
}

TEST_CASE("two-divisibility subsystem is equivariant") {
    for (const char* t : {"B2", "G2", "B3"}) {
        auto r = RootSystem::from_type(t);
        auto base = subsystem_two(r, 0);
        std::set<std::size_t> base_roots(base.parent_roots.begin(), base.parent_roots.end());
        for (std::size_t c = 0; c < r.order(); ++c) {
            auto s = subsystem_two(r, c);
            std::set<std::size_t> mapped;
            for (auto j : base_roots) mapped.insert(r.element(c).root_perm[j]);
            CHECK(mapped == std::set<std::size_t>(s.parent_roots.begin(), s.parent_roots.end()));
        }
    }
}

TEST_CASE("reflection subgroups") {
    auto b2 = RootSystem::from_type("B2");
    CHECK(b2.reflection_subgroup({}).size() == 1);
    CHECK(b2.reflection_subgroup({0}).size() == 2);
    CHECK(b2.reflection_subgroup({0, 1}).size() == 8);
    auto g2 = RootSystem::from_type("G2");
    for (std::size_t a = 0; a < g2.root_count(); ++a) CHECK(g2.element(g2.reflection(a)).length() % 2 == 1);
}
