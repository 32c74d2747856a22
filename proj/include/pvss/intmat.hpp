#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace pvss {

using Int = mpz_class;
using IntVec = std::vector<Int>;

/// Dense arbitrary-precision integer matrix, row-major.
/// Zero rows/columns are legal; a 0xk matrix is the unique map into the
/// trivial group, a kx0 matrix the unique map out of it.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix from_column(const IntVec& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    IntVec apply(const IntVec& x) const;

    IntMatrix transpose() const;
    IntMatrix column(std::size_t j) const;
    IntVec column_vec(std::size_t j) const;
    bool is_zero() const;
    bool is_identity() const;

    /// Horizontal concatenation [this | rhs]; row counts must agree
    /// (a matrix with zero columns concatenates freely).
    IntMatrix hcat(const IntMatrix& rhs) const;

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    Int determinant() const;

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> entries_;
};

struct SmithForm {
    IntMatrix d;  // diagonal, nonnegative, d1 | d2 | ... | dr, then zeros
    IntMatrix u;  // unimodular, u * m * v = d
    IntMatrix v;
    std::size_t rank = 0;
};

struct HermiteForm {
    IntMatrix h;  // column echelon, m * u = h
    IntMatrix u;  // unimodular
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Column-style Hermite normal form: m * u = h with u unimodular, pivot
/// entries positive, entries to the left of a pivot reduced modulo it.
HermiteForm hermite_normal_form(const IntMatrix& m);

/// One integer solution of m * x = b, if any.
std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b);

/// One x with m * x - b in the integer column span of rel, if any.
std::optional<IntVec> solve_modulo(const IntMatrix& m, const IntMatrix& rel, const IntVec& b);

/// Basis of the lattice { x : m * x = 0 }, returned as matrix columns.
IntMatrix kernel_lattice(const IntMatrix& m);

/// Basis of { x : m * x in column span of rel }.
IntMatrix kernel_lattice_modulo(const IntMatrix& m, const IntMatrix& rel);

std::size_t rank(const IntMatrix& m);

}  // namespace pvss
