#pragma once

#include "dsc/ratgeom.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace dsc {

// Deterministic source of small random rationals; the same seed gives the same stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Child generator whose stream depends only on this seed and the tag.
    static Rng derived(std::uint64_t seed, std::string_view tag) {
        std::uint64_t h = 1469598103934665603ull ^ seed;
        for (char c : tag) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
        return Rng(h);
    }

    long integer(long lo, long hi) {
        // Plain modular reduction keeps the stream identical across standard libraries.
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(gen_() % span);
    }

    Rational rational(long bound = 9, long den_bound = 4) {
        Rational q(integer(-bound, bound), integer(1, den_bound));
        q.canonicalize();
        return q;
    }

    Rational nonzero_rational(long bound = 9, long den_bound = 4) {
        Rational q;
        do q = rational(bound, den_bound);
        while (q == 0);
        return q;
    }

    RationalVector vector(std::size_t n, long bound = 9, long den_bound = 4) {
        RationalVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = rational(bound, den_bound);
        return v;
    }

    RationalVector integer_vector(std::size_t n, long bound) {
        RationalVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = integer(-bound, bound);
        return v;
    }

    bool coin() { return gen_() & 1u; }

private:
    std::mt19937_64 gen_;
};

}  // namespace dsc
