#include "doctest.h"

#include "dsc/random.hpp"
#include "dsc/ratgeom.hpp"

using namespace dsc;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational(" 7 ") == 7);
    CHECK(to_string(Rational(-3, 2)) == "-3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    auto v = parse_vector("1/2,-3");
    CHECK(v == RationalVector{Rational(1, 2), -3});
    CHECK(to_string(v) == "[1/2,-3]");
    CHECK(parse_vector("").size() == 0);
}

TEST_CASE("primitive vectors") {
    CHECK(primitive(RationalVector{Rational(1, 2), Rational(-3, 4)}) == RationalVector{2, -3});
    CHECK(primitive(RationalVector{0, 6, 9}) == RationalVector{0, 2, 3});
    CHECK(primitive(RationalVector{0, 0}).is_zero());
}

TEST_CASE("linear algebra on a fixed matrix") {
    auto m = RationalMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
    CHECK(rank(m) == 2);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    CHECK((m * k[0]).is_zero());
    CHECK(determinant(m) == 0);
    CHECK_FALSE(inverse(m).has_value());
    CHECK_FALSE(solve_linear(m, RationalVector{1, 0, 0}).has_value());
    auto x = solve_linear(m, RationalVector{6, 12, 2});
    REQUIRE(x);
    CHECK(m * *x == RationalVector{6, 12, 2});

    auto a = RationalMatrix::from_rows({{2, 1}, {7, 4}}, 2);
    CHECK(determinant(a) == 1);
    auto ai = inverse(a);
    REQUIRE(ai);
    CHECK(*ai * a == RationalMatrix::identity(2));
    CHECK_THROWS_AS(RationalVector({1, 2}) + RationalVector({1}), DimensionMismatch);
}

TEST_CASE("random inverses and determinants agree") {
    Rng rng(11);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = 1 + t % 4;
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.rational(5, 3);
        auto inv = inverse(m);
        CHECK(inv.has_value() == (determinant(m) != 0));
        if (inv) CHECK(m * *inv == RationalMatrix::identity(n));
    }
}

TEST_CASE("projector is idempotent and orthogonal") {
    auto gram = RationalMatrix::from_rows({{2, -1}, {-1, 2}}, 2);
    Projector p({RationalVector{1, 0}}, gram);
    RationalVector x{3, 5};
    auto px = p(x);
    CHECK(p(px) == px);
    CHECK(dot(RationalVector{1, 0}, gram * (x - px)) == 0);
}

namespace {
// Brute force: try every +-1 character of the super lattice and restrict it.
bool lifts_by_enumeration(const SignCharacter& chi, const std::vector<RationalVector>& sub,
                          const std::vector<RationalVector>& super) {
    std::size_t m = super.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        SignCharacter s;
        for (std::size_t j = 0; j < m; ++j) s.values.push_back((mask >> j) & 1 ? -1 : 1);
        bool ok = true;
        for (std::size_t i = 0; i < sub.size() && ok; ++i)
            ok = s.evaluate(*lattice_coordinates(super, sub[i])) == chi.values[i];
        if (ok) return true;
    }
    return false;
}
}  // namespace

TEST_CASE("sign character lifting matches enumeration") {
    // Coroot lattice of B2 inside the coweight lattice (coweight coordinates).
    std::vector<RationalVector> q{{2, -1}, {-2, 2}};
    std::vector<RationalVector> p{{1, 0}, {0, 1}};
    int lifting = 0;
    for (int a : {1, -1})
        for (int b : {1, -1}) {
            SignCharacter chi{{a, b}};
            bool l = sign_character_lifts(chi, q, p);
            CHECK(l == lifts_by_enumeration(chi, q, p));
            // The second simple coroot is twice a lattice vector, so it must map to +1.
            CHECK(l == (b == 1));
            lifting += l;
        }
    CHECK(lifting == 2);

    Rng rng(5);
    for (int t = 0; t < 60; ++t) {
        std::size_t m = 1 + t % 3;
        std::vector<RationalVector> sup, sub;
        for (std::size_t i = 0; i < m; ++i) sup.push_back(RationalVector::unit(m, i));
        RationalMatrix mat(m, m);
        do {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) mat(i, j) = rng.integer(-3, 3);
        } while (determinant(mat) == 0);
        for (std::size_t i = 0; i < m; ++i) sub.push_back(mat.row(i));
        SignCharacter chi;
        for (std::size_t i = 0; i < m; ++i) chi.values.push_back(rng.coin() ? 1 : -1);
        CHECK(sign_character_lifts(chi, sub, sup) == lifts_by_enumeration(chi, sub, sup));
    }
    CHECK_THROWS_AS(sign_character_lifts(SignCharacter{{1}}, {RationalVector{Rational(1, 2)}}, {RationalVector{1}}),
                    PreconditionError);
}
