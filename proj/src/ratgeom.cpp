#include "dsc/ratgeom.hpp"

#include <algorithm>
#include <sstream>

namespace dsc {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Rational parse_rational(std::string_view s) {
    std::string t = trim(s);
    if (t.empty()) throw ParseError("empty rational");
    if (t[0] == '+') t.erase(0, 1);
    auto slash = t.find('/');
    auto digits = [](const std::string& part, bool allow_sign) {
        std::size_t i = (allow_sign && !part.empty() && part[0] == '-') ? 1 : 0;
        if (i >= part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    std::string num = t.substr(0, slash), den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) throw ParseError("malformed rational '" + t + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in '" + t + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

int sign(const Rational& q) { return sgn(q); }

RationalVector RationalVector::unit(std::size_t n, std::size_t i) {
    RationalVector v(n);
    v[i] = 1;
    return v;
}

bool RationalVector::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](const Rational& q) { return q == 0; });
}

RationalVector& RationalVector::operator+=(const RationalVector& o) {
    require_same(size(), o.size(), "vector add");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

RationalVector& RationalVector::operator-=(const RationalVector& o) {
    require_same(size(), o.size(), "vector sub");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

RationalVector& RationalVector::operator*=(const Rational& c) {
    for (auto& x : v_) x *= c;
    return *this;
}

bool operator==(const RationalVector& a, const RationalVector& b) { return a.v_ == b.v_; }

std::strong_ordering operator<=>(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a.v_[i], b.v_[i]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
RationalVector operator-(RationalVector a) { return a *= Rational(-1); }
RationalVector operator*(const Rational& c, RationalVector a) { return a *= c; }

Rational dot(const RationalVector& a, const RationalVector& b) {
    require_same(a.size(), b.size(), "dot");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

RationalVector primitive(const RationalVector& v) {
    mpz_class l = 1, g = 0;
    for (const auto& x : v) l = lcm(l, x.get_den());
    RationalVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational y = v[i] * l;
        out[i] = y;
        g = gcd(g, y.get_num());
    }
    if (g != 0)
        for (auto& x : out) x /= g;
    return out;
}

RationalVector parse_vector(std::string_view s) {
    std::string t = trim(s);
    if (!t.empty() && t.front() == '[' && t.back() == ']') t = trim(std::string_view(t).substr(1, t.size() - 2));
    std::vector<Rational> xs;
    if (t.empty()) return RationalVector(std::move(xs));
    std::size_t start = 0;
    while (true) {
        auto comma = t.find(',', start);
        xs.push_back(parse_rational(std::string_view(t).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return RationalVector(std::move(xs));
}

std::string to_string(const RationalVector& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ']';
    return os.str();
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        require_same(rows[i].size(), cols, "matrix row");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<RationalVector>& cols, std::size_t rows) {
    RationalMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        require_same(cols[j].size(), rows, "matrix column");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

RationalVector RationalMatrix::row(std::size_t i) const {
    RationalVector v(c_);
    for (std::size_t j = 0; j < c_; ++j) v[j] = (*this)(i, j);
    return v;
}

RationalVector RationalMatrix::col(std::size_t j) const {
    RationalVector v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    require_same(a.cols(), b.rows(), "matrix product");
    RationalMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RationalVector operator*(const RationalMatrix& a, const RationalVector& x) {
    require_same(a.cols(), x.size(), "matrix-vector product");
    RationalVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

RationalVector operator*(const RationalVector& x, const RationalMatrix& a) {
    require_same(a.rows(), x.size(), "vector-matrix product");
    RationalVector y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += x[i] * a(i, j);
    }
    return y;
}

RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return m;
}

std::size_t rank(const RationalMatrix& m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv.size();
}

std::size_t rank(const std::vector<RationalVector>& vs, std::size_t dim) {
    if (vs.empty()) return 0;
    return rank(RationalMatrix::from_rows(vs, dim));
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
    std::vector<std::size_t> piv;
    RationalMatrix e = rref(m, &piv);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -e(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> solve_linear(const RationalMatrix& m, const RationalVector& b) {
    require_same(m.rows(), b.size(), "solve_linear");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    RationalMatrix e = rref(aug, &piv);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    RationalVector x(m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = e(i, m.cols());
    return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
    std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    RationalMatrix e = rref(aug, &piv);
    if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e(i, n + j);
    return inv;
}

Rational determinant(RationalMatrix m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

std::vector<RationalVector> span_basis(const std::vector<RationalVector>& vs, std::size_t dim) {
    if (vs.empty()) return {};
    std::vector<std::size_t> piv;
    RationalMatrix e = rref(RationalMatrix::from_rows(vs, dim), &piv);
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(e.row(i));
    return out;
}

std::vector<RationalVector> annihilator(const std::vector<RationalVector>& vs, std::size_t dim) {
    if (vs.empty()) {
        std::vector<RationalVector> out;
        for (std::size_t i = 0; i < dim; ++i) out.push_back(RationalVector::unit(dim, i));
        return out;
    }
    return span_basis(kernel_basis(RationalMatrix::from_rows(vs, dim)), dim);
}

Projector::Projector(std::vector<RationalVector> basis, RationalMatrix gram)
    : basis_(std::move(basis)), gram_(std::move(gram)) {
    std::size_t k = basis_.size();
    RationalMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) g(i, j) = dot(basis_[i], gram_ * basis_[j]);
    auto inv = inverse(g);
    if (!inv) throw PreconditionError("projector basis is linearly dependent");
    inv_ = *inv;
}

RationalVector Projector::operator()(const RationalVector& x) const {
    std::size_t k = basis_.size();
    RationalVector gx = gram_ * x;
    RationalVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) rhs[i] = dot(basis_[i], gx);
    RationalVector c = inv_ * rhs;
    RationalVector out(x.size());
    for (std::size_t i = 0; i < k; ++i) out += c[i] * basis_[i];
    return out;
}

int SignCharacter::evaluate(const RationalVector& coords) const {
    if (coords.size() != values.size()) throw DimensionMismatch("sign character evaluation");
    int v = 1;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].get_den() != 1) throw PreconditionError("non-integral lattice coordinates");
        if (values[i] == -1 && mpz_odd_p(coords[i].get_num_mpz_t())) v = -v;
    }
    return v;
}

std::optional<RationalVector> lattice_coordinates(const std::vector<RationalVector>& basis,
                                                  const RationalVector& v) {
    if (basis.empty()) return v.is_zero() ? std::optional<RationalVector>(RationalVector()) : std::nullopt;
    auto m = RationalMatrix::from_columns(basis, v.size());
    if (rank(m) != basis.size()) throw PreconditionError("lattice basis is linearly dependent");
    auto c = solve_linear(m, v);
    if (!c || m * *c != v) return std::nullopt;
    for (const auto& x : *c)
        if (x.get_den() != 1) return std::nullopt;
    return c;
}

bool sign_character_lifts(const SignCharacter& chi,
                          const std::vector<RationalVector>& sub_basis,
                          const std::vector<RationalVector>& super_basis) {
    if (chi.values.size() != sub_basis.size()) throw DimensionMismatch("sign character vs sublattice basis");
    for (int v : chi.values)
        if (v != 1 && v != -1) throw PreconditionError("sign character values must be +1 or -1");
    // Over GF(2): find t with M t = c, where row i of M holds the super coordinates of sub_basis[i].
    std::size_t k = sub_basis.size(), m = super_basis.size();
    std::vector<std::vector<int>> a(k, std::vector<int>(m + 1, 0));
    for (std::size_t i = 0; i < k; ++i) {
        auto c = lattice_coordinates(super_basis, sub_basis[i]);
        if (!c) throw PreconditionError("sublattice is not contained in the lattice");
        for (std::size_t j = 0; j < m; ++j) a[i][j] = mpz_odd_p((*c)[j].get_num_mpz_t()) ? 1 : 0;
        a[i][m] = chi.values[i] == -1 ? 1 : 0;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < k; ++c) {
        std::size_t p = r;
        while (p < k && !a[p][c]) ++p;
        if (p == k) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < k; ++i)
            if (i != r && a[i][c])
                for (std::size_t j = c; j <= m; ++j) a[i][j] ^= a[r][j];
        ++r;
    }
    for (std::size_t i = r; i < k; ++i)
        if (a[i][m]) return false;
    return true;
}

}  // namespace dsc
