#include "stablepi1/intlin.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace stablepi1 {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    IntMatrix m(0, rows.empty() ? cols : rows.front().size());
    for (const auto& r : rows) m.append_row(r);
    return m;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

void IntMatrix::append_row(const std::vector<Integer>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

IntMatrix IntMatrix::stacked(const IntMatrix& below) const {
    if (rows_ == 0) return below;
    if (below.rows_ == 0) return *this;
    if (below.cols_ != cols_) throw std::invalid_argument("column count mismatch");
    IntMatrix m = *this;
    m.data_.insert(m.data_.end(), below.data_.begin(), below.data_.end());
    m.rows_ += below.rows_;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
        }
    return p;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
    IntMatrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
    return s;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
    IntMatrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
    return s;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        out << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) out << (j ? "," : "") << (*this)(i, j).get_str();
        out << ']';
    }
    out << ']';
    return out.str();
}

// ---------------------------------------------------------------------------

RatVector::RatVector(std::vector<Integer> numerators, Integer denominator)
    : num_(std::move(numerators)), den_(std::move(denominator)) {
    if (den_ == 0) throw std::invalid_argument("zero denominator");
    normalize();
}

void RatVector::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& v : num_) v = -v;
    }
    Integer g = den_;
    for (const auto& v : num_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) return;
    }
    if (g == 0) {
        den_ = 1;
        return;
    }
    den_ /= g;
    for (auto& v : num_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

bool RatVector::is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const Integer& v) { return v == 0; });
}

RatVector RatVector::mod_lattice() const {
    std::vector<Integer> r(num_.size());
    for (std::size_t i = 0; i < num_.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), num_[i].get_mpz_t(), den_.get_mpz_t());
    return RatVector(std::move(r), den_);
}

RatVector RatVector::operator-() const {
    std::vector<Integer> r = num_;
    for (auto& v : r) v = -v;
    return RatVector(std::move(r), den_);
}

RatVector operator+(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    Integer den = a.den_ * b.den_;
    std::vector<Integer> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
    return RatVector(std::move(r), den);
}

RatVector operator*(const IntMatrix& m, const RatVector& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<Integer> r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v.num_[j];
    return RatVector(std::move(r), v.den_);
}

RatVector operator*(const RatVector& v, const IntMatrix& m) {
    if (m.rows() != v.size()) throw std::invalid_argument("vector-matrix dimension mismatch");
    std::vector<Integer> r(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v.num_[i] * m(i, j);
    return RatVector(std::move(r), v.den_);
}

std::string RatVector::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < num_.size(); ++i) out << (i ? "," : "") << num_[i].get_str();
    out << ')';
    if (den_ != 1) out << '/' << den_.get_str();
    return out.str();
}

// ---------------------------------------------------------------------------

std::optional<Integer> AbelianInvariants::order() const {
    if (free_rank != 0) return std::nullopt;
    Integer n = 1;
    for (const auto& d : torsion) n *= d;
    return n;
}

std::string AbelianInvariants::to_string() const {
    if (is_trivial()) return "1";
    std::ostringstream out;
    bool first = true;
    if (free_rank > 0) {
        out << "Z";
        if (free_rank > 1) out << '^' << free_rank;
        first = false;
    }
    for (const auto& d : torsion) {
        out << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    return out.str();
}

std::vector<Integer> SnfResult::diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
}

std::size_t SnfResult::rank() const {
    std::size_t r = 0;
    for (const auto& d : diagonal()) r += d != 0;
    return r;
}

namespace {

int compare_abs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

struct FullSnf {
    IntMatrix D, U, V, V_inverse;
    std::size_t rank = 0;
};

FullSnf snf_full(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    FullSnf s{a, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n), 0};
    IntMatrix& d = s.D;

    auto swap_rows = [&](std::size_t x, std::size_t y) {
        d.swap_rows(x, y);
        s.U.swap_rows(x, y);
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        d.swap_cols(x, y);
        s.V.swap_cols(x, y);
        s.V_inverse.swap_rows(x, y);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Integer& k) {
        d.add_row_multiple(dst, src, k);
        s.U.add_row_multiple(dst, src, k);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Integer& k) {
        d.add_col_multiple(dst, src, k);
        s.V.add_col_multiple(dst, src, k);
        s.V_inverse.add_row_multiple(src, dst, -k);
    };

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Pivot: smallest nonzero |entry|, first in row-major order on ties.
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (d(i, j) == 0) continue;
                    if (pi == m || compare_abs(d(i, j), d(pi, pj)) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == m) return s;
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            Integer q;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
                add_row(i, t, -q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
                add_col(j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            add_row(t, bad, 1);
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.U.negate_row(t);
        }
        ++s.rank;
    }
    return s;
}

// Is the integral vector w in the row lattice of the Hermite-form matrix h?
bool in_hermite_lattice(std::vector<Integer> w, const IntMatrix& h) {
    std::size_t col = 0;
    for (std::size_t r = 0; r < h.rows(); ++r) {
        while (col < h.cols() && h(r, col) == 0) {
            if (w[col] != 0) return false;
            ++col;
        }
        if (col == h.cols()) break;
        if (!mpz_divisible_p(w[col].get_mpz_t(), h(r, col).get_mpz_t())) return false;
        Integer q = w[col] / h(r, col);
        for (std::size_t j = col; j < h.cols(); ++j) w[j] -= q * h(r, j);
        ++col;
    }
    return std::all_of(w.begin(), w.end(), [](const Integer& v) { return v == 0; });
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
    FullSnf s = snf_full(a);
    return {std::move(s.D), std::move(s.U), std::move(s.V)};
}

AbelianInvariants cokernel_invariants(const IntMatrix& a, std::size_t ambient_rank) {
    if (a.rows() != 0 && a.cols() != ambient_rank)
        throw std::invalid_argument("relation matrix width differs from ambient rank");
    AbelianInvariants inv;
    if (a.rows() == 0) {
        inv.free_rank = ambient_rank;
        return inv;
    }
    FullSnf s = snf_full(a);
    inv.free_rank = ambient_rank - s.rank;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1) inv.torsion.push_back(s.D(i, i));
    return inv;
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
    IntMatrix h = a;
    const std::size_t m = h.rows(), n = h.cols();
    std::size_t r = 0;
    Integer q;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        bool found = false;
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (h(i, c) != 0 && (best == m || compare_abs(h(i, c), h(best, c)) < 0)) best = i;
            if (best == m) break;
            found = true;
            h.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h(i, c) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
                h.add_row_multiple(i, r, -q);
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (!found) continue;
        if (h(r, c) < 0) h.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) {
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            h.add_row_multiple(i, r, -q);
        }
        ++r;
    }
    IntMatrix out(0, n);
    for (std::size_t i = 0; i < r; ++i) out.append_row(h.row(i));
    return out;
}

IntMatrix saturation(const IntMatrix& a) {
    FullSnf s = snf_full(a);
    IntMatrix basis(0, a.cols());
    for (std::size_t i = 0; i < s.rank; ++i) basis.append_row(s.V_inverse.row(i));
    return hermite_normal_form(basis);
}

bool membership(const RatVector& t, const IntMatrix& a, const IntMatrix& lattice) {
    const std::size_t n = t.size();
    if (a.rows() != 0 && a.cols() != n) throw std::invalid_argument("subspace generators have wrong width");
    if (lattice.rows() != 0 && lattice.cols() != n) throw std::invalid_argument("lattice generators have wrong width");
    if (t.is_zero()) return true;

    FullSnf s = snf_full(a.rows() ? a : IntMatrix(0, n));
    // Coordinates x*V split Z^n into the saturated span of A (first `rank`) and a complement.
    const std::size_t k = s.rank;
    RatVector tv = t * s.V;
    std::vector<Integer> w(tv.numerators().begin() + static_cast<std::ptrdiff_t>(k), tv.numerators().end());
    if (w.empty()) return true;

    IntMatrix projected(0, n - k);
    if (lattice.rows()) {
        IntMatrix lv = lattice * s.V;
        for (std::size_t i = 0; i < lv.rows(); ++i) {
            auto row = lv.row(i);
            std::vector<Integer> tail(row.begin() + static_cast<std::ptrdiff_t>(k), row.end());
            for (auto& v : tail) v *= tv.denominator();
            projected.append_row(tail);
        }
    }
    return in_hermite_lattice(std::move(w), hermite_normal_form(projected));
}

Integer determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::optional<RatVector> solve_left(const IntMatrix& b, const RatVector& v) {
    // Columns of b give the equations sum_i x_i b(i, j) = v_j.
    const std::size_t k = b.rows(), n = b.cols();
    if (v.size() != n) throw std::invalid_argument("right-hand side has wrong length");
    std::vector<std::vector<mpq_class>> aug(n, std::vector<mpq_class>(k + 1));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < k; ++i) aug[j][i] = b(i, j);
        aug[j][k] = mpq_class(v.numerators()[j], v.denominator());
        aug[j][k].canonicalize();
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < n; ++c) {
        std::size_t p = r;
        while (p < n && aug[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(aug[p], aug[r]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || aug[i][c] == 0) continue;
            mpq_class f = aug[i][c] / aug[r][c];
            for (std::size_t j = c; j <= k; ++j) aug[i][j] -= f * aug[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < n; ++i)
        if (aug[i][k] != 0) return std::nullopt;

    std::vector<mpq_class> x(k);
    for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = aug[i][k] / aug[i][pivot_col[i]];
    Integer den = 1;
    for (const auto& q : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> num(k);
    for (std::size_t i = 0; i < k; ++i) num[i] = x[i].get_num() * (den / x[i].get_den());
    return RatVector(std::move(num), den);
}

AbelianInvariants quotient_invariants(const IntMatrix& ambient, const IntMatrix& sub) {
    IntMatrix h = hermite_normal_form(ambient);
    IntMatrix coords(0, h.rows());
    for (std::size_t i = 0; i < sub.rows(); ++i) {
        auto x = solve_left(h, RatVector(sub.row(i)));
        if (!x || !x->is_integral()) throw std::invalid_argument("sublattice is not contained in the ambient lattice");
        coords.append_row(x->numerators());
    }
    return cokernel_invariants(coords, h.rows());
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
    return hermite_normal_form(a) == hermite_normal_form(b);
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return k;
}

}  // namespace stablepi1
