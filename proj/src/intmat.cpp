#include "pvss/intmat.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace pvss {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long x : r) entries_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_column(const IntVec& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("IntMatrix: dimension mismatch in sum");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out.entries_[i] = entries_[i] + rhs.entries_[i];
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("IntMatrix: dimension mismatch in difference");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out.entries_[i] = entries_[i] - rhs.entries_[i];
    return out;
}

IntVec IntMatrix::apply(const IntVec& x) const {
    if (x.size() != cols_)
        throw std::invalid_argument("IntMatrix: dimension mismatch in apply");
    IntVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * x[j];
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

IntMatrix IntMatrix::column(std::size_t j) const {
    IntMatrix out(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) out.at(i, 0) = at(i, j);
    return out;
}

IntVec IntMatrix::column_vec(std::size_t j) const {
    IntVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
    return out;
}

bool IntMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (e != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntMatrix IntMatrix::hcat(const IntMatrix& rhs) const {
    if (cols_ == 0 && rows_ == 0 && rhs.cols_ > 0) return rhs;
    if (rhs.cols_ == 0) return *this;
    if (cols_ == 0 && rows_ != rhs.rows_) {
        IntMatrix padded(rhs.rows_, 0);
        return padded.hcat(rhs);
    }
    if (rows_ != rhs.rows_)
        throw std::invalid_argument("IntMatrix: row mismatch in hcat");
    IntMatrix out(rows_, cols_ + rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, cols_ + j) = rhs.at(i, j);
    }
    return out;
}

Int IntMatrix::determinant() const {
    if (rows_ != cols_)
        throw std::invalid_argument("IntMatrix: determinant of non-square matrix");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    // Bareiss fraction-free elimination
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

void swap_rows(IntMatrix& a, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
}

void swap_cols(IntMatrix& a, std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
}

// row_i += q * row_j
void add_row(IntMatrix& a, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) += q * a.at(j, c);
}

// col_i += q * col_j
void add_col(IntMatrix& a, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, i) += q * a.at(r, j);
}

void negate_row(IntMatrix& a, std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
}

void negate_col(IntMatrix& a, std::size_t i) {
    for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, i) = -a.at(r, i);
}

// Replace rows i,j by the unimodular combination realizing gcd at (i,col), (j,col).
// When the pivot divides the target a single elementary operation suffices;
// the general combination may rewrite the pivot row (gcdext can return s = 0).
void gcd_rows(IntMatrix& a, IntMatrix& u, std::size_t i, std::size_t j, std::size_t col) {
    if (a.at(i, col) != 0 && a.at(j, col) % a.at(i, col) == 0) {
        Int q = -(a.at(j, col) / a.at(i, col));
        add_row(a, j, i, q);
        add_row(u, j, i, q);
        return;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
               a.at(i, col).get_mpz_t(), a.at(j, col).get_mpz_t());
    Int p = a.at(i, col) / g, q = a.at(j, col) / g;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        Int x = a.at(i, c), y = a.at(j, c);
        a.at(i, c) = s * x + t * y;
        a.at(j, c) = p * y - q * x;
    }
    for (std::size_t c = 0; c < u.cols(); ++c) {
        Int x = u.at(i, c), y = u.at(j, c);
        u.at(i, c) = s * x + t * y;
        u.at(j, c) = p * y - q * x;
    }
}

void gcd_cols(IntMatrix& a, IntMatrix& v, std::size_t i, std::size_t j, std::size_t row) {
    if (a.at(row, i) != 0 && a.at(row, j) % a.at(row, i) == 0) {
        Int q = -(a.at(row, j) / a.at(row, i));
        add_col(a, j, i, q);
        add_col(v, j, i, q);
        return;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
               a.at(row, i).get_mpz_t(), a.at(row, j).get_mpz_t());
    Int p = a.at(row, i) / g, q = a.at(row, j) / g;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Int x = a.at(r, i), y = a.at(r, j);
        a.at(r, i) = s * x + t * y;
        a.at(r, j) = p * y - q * x;
    }
    for (std::size_t r = 0; r < v.rows(); ++r) {
        Int x = v.at(r, i), y = v.at(r, j);
        v.at(r, i) = s * x + t * y;
        v.at(r, j) = p * y - q * x;
    }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm f;
    std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    std::size_t t = 0;
    std::size_t bound = std::min(rows, cols);
    while (t < bound) {
        // pivot = smallest nonzero absolute value to curb growth
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (a.at(i, j) == 0) continue;
                Int ab = abs(a.at(i, j));
                if (!found || ab < best) {
                    best = ab;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        if (pi != t) {
            swap_rows(a, t, pi);
            swap_rows(u, t, pi);
        }
        if (pj != t) {
            swap_cols(a, t, pj);
            swap_cols(v, t, pj);
        }

        bool again = true;
        while (again) {
            again = false;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a.at(i, t) != 0) gcd_rows(a, u, t, i, t);
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a.at(t, j) != 0) {
                    gcd_cols(a, v, t, j, t);
                    // column ops can refill the pivot column
                    for (std::size_t i = t + 1; i < rows; ++i)
                        if (a.at(i, t) != 0) {
                            again = true;
                            break;
                        }
                }
        }

        // enforce divisibility of the remaining block by the pivot
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a.at(i, j) % a.at(t, t) != 0) {
                    add_col(a, t, j, 1);
                    add_col(v, t, j, 1);
                    divides = false;
                    break;
                }
        if (!divides) continue;  // redo pivot step at same t

        if (a.at(t, t) < 0) {
            negate_row(a, t);
            negate_row(u, t);
        }
        ++t;
    }

    f.d = std::move(a);
    f.u = std::move(u);
    f.v = std::move(v);
    f.rank = t;
    return f;
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(cols);

    std::size_t c = 0;
    for (std::size_t r = 0; r < rows && c < cols; ++r) {
        std::size_t pj = c;
        while (pj < cols && h.at(r, pj) == 0) ++pj;
        if (pj == cols) continue;
        if (pj != c) {
            swap_cols(h, c, pj);
            swap_cols(u, c, pj);
        }
        for (std::size_t j = c + 1; j < cols; ++j)
            if (h.at(r, j) != 0) gcd_cols(h, u, c, j, r);
        if (h.at(r, c) < 0) {
            negate_col(h, c);
            negate_col(u, c);
        }
        // reduce earlier columns at the pivot row
        for (std::size_t j = 0; j < c; ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(r, j).get_mpz_t(), h.at(r, c).get_mpz_t());
            if (q != 0) {
                add_col(h, j, c, -q);
                add_col(u, j, c, -q);
            }
        }
        ++c;
    }

    HermiteForm f;
    f.h = std::move(h);
    f.u = std::move(u);
    return f;
}

std::optional<IntVec> solve_integer(const IntMatrix& m, const IntVec& b) {
    if (b.size() != m.rows())
        throw std::invalid_argument("solve_integer: right-hand side length mismatch");
    SmithForm f = smith_normal_form(m);
    IntVec ub = f.u.apply(b);
    IntVec y(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i < f.rank) {
            if (ub[i] % f.d.at(i, i) != 0) return std::nullopt;
            y[i] = ub[i] / f.d.at(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return f.v.apply(y);
}

std::optional<IntVec> solve_modulo(const IntMatrix& m, const IntMatrix& rel, const IntVec& b) {
    if (rel.cols() > 0 && rel.rows() != m.rows())
        throw std::invalid_argument("solve_modulo: relation row count mismatch");
    auto full = solve_integer(m.hcat(IntMatrix(m.rows(), 0).hcat(rel)), b);
    if (!full) return std::nullopt;
    IntVec x(full->begin(), full->begin() + static_cast<std::ptrdiff_t>(m.cols()));
    return x;
}

IntMatrix kernel_lattice(const IntMatrix& m) {
    HermiteForm f = hermite_normal_form(m);
    std::vector<std::size_t> zero_cols;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (f.h.at(i, j) != 0) {
                zero = false;
                break;
            }
        if (zero) zero_cols.push_back(j);
    }
    IntMatrix out(m.cols(), zero_cols.size());
    for (std::size_t k = 0; k < zero_cols.size(); ++k)
        for (std::size_t i = 0; i < m.cols(); ++i) out.at(i, k) = f.u.at(i, zero_cols[k]);
    return out;
}

IntMatrix kernel_lattice_modulo(const IntMatrix& m, const IntMatrix& rel) {
    if (rel.cols() == 0) return kernel_lattice(m);
    IntMatrix joint = kernel_lattice(m.hcat(rel));
    IntMatrix out(m.cols(), joint.cols());
    for (std::size_t j = 0; j < joint.cols(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) out.at(i, j) = joint.at(i, j);
    return out;
}

std::size_t rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

}  // namespace pvss
