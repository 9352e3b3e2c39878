#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dsc {

using Rational = mpq_class;

class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an operation is called outside its mathematical domain.
class PreconditionError : public std::domain_error {
public:
    explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

class ParseError : public std::invalid_argument {
public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);
int sign(const Rational& q);

class RationalVector {
public:
    RationalVector() = default;
    explicit RationalVector(std::size_t n) : v_(n) {}
    RationalVector(std::initializer_list<Rational> xs) : v_(xs) {}
    explicit RationalVector(std::vector<Rational> xs) : v_(std::move(xs)) {}

    static RationalVector unit(std::size_t n, std::size_t i);

    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    Rational& operator[](std::size_t i) { return v_[i]; }
    const Rational& operator[](std::size_t i) const { return v_[i]; }
    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    const std::vector<Rational>& data() const { return v_; }

    bool is_zero() const;

    RationalVector& operator+=(const RationalVector& o);
    RationalVector& operator-=(const RationalVector& o);
    RationalVector& operator*=(const Rational& c);

    friend bool operator==(const RationalVector& a, const RationalVector& b);
    friend std::strong_ordering operator<=>(const RationalVector& a, const RationalVector& b);

private:
    std::vector<Rational> v_;
};

RationalVector operator+(RationalVector a, const RationalVector& b);
RationalVector operator-(RationalVector a, const RationalVector& b);
RationalVector operator-(RationalVector a);
RationalVector operator*(const Rational& c, RationalVector a);

Rational dot(const RationalVector& a, const RationalVector& b);

// Positive multiple with coprime integer entries; zero stays zero.
RationalVector primitive(const RationalVector& v);

// Parses "1/2,-3" (empty string gives the zero-dimensional vector).
RationalVector parse_vector(std::string_view s);
std::string to_string(const RationalVector& v);

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);
    static RationalMatrix from_columns(const std::vector<RationalVector>& cols, std::size_t rows);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    RationalVector row(std::size_t i) const;
    RationalVector col(std::size_t j) const;
    RationalMatrix transpose() const;

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalVector operator*(const RationalMatrix& a, const RationalVector& x);
// Row vector times matrix.
RationalVector operator*(const RationalVector& x, const RationalMatrix& a);

// Reduced row echelon form; pivot columns are appended to *pivots when given.
RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RationalMatrix& m);
std::size_t rank(const std::vector<RationalVector>& vs, std::size_t dim);
// Basis of {x : m x = 0}, one vector per free column of the RREF.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);
// Some solution of m x = b (free variables set to zero), or nothing if inconsistent.
std::optional<RationalVector> solve_linear(const RationalMatrix& m, const RationalVector& b);
std::optional<RationalMatrix> inverse(const RationalMatrix& m);
Rational determinant(RationalMatrix m);

// Canonical basis (nonzero RREF rows) of the span of vs.
std::vector<RationalVector> span_basis(const std::vector<RationalVector>& vs, std::size_t dim);
// Forms vanishing on span(vs), as a canonical basis.
std::vector<RationalVector> annihilator(const std::vector<RationalVector>& vs, std::size_t dim);

// Orthogonal projection onto span(basis) for the inner product given by gram.
class Projector {
public:
    Projector(std::vector<RationalVector> basis, RationalMatrix gram);
    RationalVector operator()(const RationalVector& x) const;
    const std::vector<RationalVector>& basis() const { return basis_; }

private:
    std::vector<RationalVector> basis_;
    RationalMatrix gram_;
    RationalMatrix inv_;
};

// A +-1 valued character on a lattice, given by its values on a basis.
struct SignCharacter {
    std::vector<int> values;

    // Value on the lattice vector with integer coordinates `coords` in the basis.
    int evaluate(const RationalVector& coords) const;
};

// Integer coordinates of `v` in the lattice basis, or nothing if v is not in the lattice.
std::optional<RationalVector> lattice_coordinates(const std::vector<RationalVector>& basis,
                                                  const RationalVector& v);

// Does chi (on the sublattice spanned by sub_basis) extend to a +-1 character of the
// lattice spanned by super_basis?  The sub lattice must lie inside the super lattice.
bool sign_character_lifts(const SignCharacter& chi,
                          const std::vector<RationalVector>& sub_basis,
                          const std::vector<RationalVector>& super_basis);

}  // namespace dsc
