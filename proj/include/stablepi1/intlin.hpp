#pragma once

// Exact integer linear algebra over arbitrary-precision integers.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace stablepi1 {

using Integer = mpz_class;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    // Rows must all have the same length; `cols` is used only when `rows` is empty.
    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Integer> row(std::size_t r) const;
    void append_row(const std::vector<Integer>& row);
    IntMatrix stacked(const IntMatrix& below) const;
    IntMatrix transpose() const;
    bool is_zero() const;

    // Elementary operations; all are unimodular except scale by a non-unit.
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);  // row dst += k * row src
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k);  // col dst += k * col src
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

// A rational vector num / den with den > 0, kept in lowest terms.
class RatVector {
public:
    RatVector() = default;
    explicit RatVector(std::vector<Integer> numerators, Integer denominator = 1);
    static RatVector zero(std::size_t n) { return RatVector(std::vector<Integer>(n)); }

    std::size_t size() const noexcept { return num_.size(); }
    const std::vector<Integer>& numerators() const noexcept { return num_; }
    const Integer& denominator() const noexcept { return den_; }
    bool is_integral() const { return den_ == 1; }
    bool is_zero() const;

    // Reduce every coordinate into [0, 1).
    RatVector mod_lattice() const;
    RatVector operator-() const;
    friend RatVector operator+(const RatVector& a, const RatVector& b);
    friend RatVector operator*(const IntMatrix& m, const RatVector& v);  // column action
    friend RatVector operator*(const RatVector& v, const IntMatrix& m);  // row action
    friend bool operator==(const RatVector& a, const RatVector& b) = default;

    std::string to_string() const;

private:
    void normalize();

    std::vector<Integer> num_;
    Integer den_ = 1;
};

// Free rank plus invariant factors d_1 | d_2 | ..., each d_i >= 2.
struct AbelianInvariants {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    // Group order when finite.
    std::optional<Integer> order() const;
    bool is_cyclic() const { return free_rank + torsion.size() <= 1; }
    std::string to_string() const;

    friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

struct SnfResult {
    IntMatrix D;
    IntMatrix U;
    IntMatrix V;

    // Diagonal entries d_1, ..., d_min(rows, cols), zeros included.
    std::vector<Integer> diagonal() const;
    std::size_t rank() const;
};

// U * A * V = D with U, V unimodular and D diagonal in divisibility order.
SnfResult smith_normal_form(const IntMatrix& a);

// Invariants of Z^ambient_rank / rowspan(A).
AbelianInvariants cokernel_invariants(const IntMatrix& a, std::size_t ambient_rank);

// Row-style Hermite normal form; zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& a);

// Basis of the saturation of rowspan(A) in Z^cols, in Hermite form.
IntMatrix saturation(const IntMatrix& a);

// t in (Q-rowspan of A) + (Z-rowspan of lattice)?
bool membership(const RatVector& t, const IntMatrix& a, const IntMatrix& lattice);

Integer determinant(const IntMatrix& a);

// Rational x with x * B = v, if one exists.
std::optional<RatVector> solve_left(const IntMatrix& b, const RatVector& v);

// Invariants of rowspan(ambient) / rowspan(sub). Throws std::invalid_argument
// when sub is not contained in ambient.
AbelianInvariants quotient_invariants(const IntMatrix& ambient, const IntMatrix& sub);

// Same row lattice?
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

}  // namespace stablepi1
