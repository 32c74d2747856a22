#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "util.hpp"

#include <random>

using namespace pvss;
using testutil::random_matrix;

namespace {

// permutation-expansion determinant, for cross-checking Bareiss
Int perm_det(const IntMatrix& m) {
    std::size_t n = m.rows();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    Int det = 0;
    do {
        int sign = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (idx[i] > idx[j]) sign = -sign;
        Int term = sign;
        for (std::size_t i = 0; i < n; ++i) term *= m.at(i, idx[i]);
        det += term;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return det;
}

bool is_diagonal(const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j && m.at(i, j) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("smith normal form, frozen examples") {
    // worked out by row/column reduction by hand
    SmithForm f = smith_normal_form(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    CHECK(f.rank == 3);
    CHECK(f.d.at(0, 0) == 2);
    CHECK(f.d.at(1, 1) == 6);
    CHECK(f.d.at(2, 2) == 12);

    SmithForm g = smith_normal_form(IntMatrix{{1, 2}, {3, 4}});
    CHECK(g.d.at(0, 0) == 1);
    CHECK(g.d.at(1, 1) == 2);

    SmithForm z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.rank == 0);
}

TEST_CASE("smith normal form, random properties") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<std::size_t> sd(0, 6);
    for (int iter = 0; iter < 150; ++iter) {
        IntMatrix m = random_matrix(rng, sd(rng), sd(rng));
        SmithForm f = smith_normal_form(m);
        CHECK(f.u * m * f.v == f.d);
        CHECK(is_diagonal(f.d));
        Int du = f.u.determinant(), dv = f.v.determinant();
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        std::size_t k = std::min(f.d.rows(), f.d.cols());
        for (std::size_t i = 0; i < k; ++i) CHECK(f.d.at(i, i) >= 0);
        for (std::size_t i = 0; i + 1 < k; ++i)
            if (f.d.at(i + 1, i + 1) != 0) {
                CHECK(f.d.at(i, i) != 0);
                CHECK(f.d.at(i + 1, i + 1) % f.d.at(i, i) == 0);
            }
        CHECK(f.rank == rank(m));
    }
}

TEST_CASE("hermite normal form, random properties") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<std::size_t> sd(0, 6);
    for (int iter = 0; iter < 150; ++iter) {
        IntMatrix m = random_matrix(rng, sd(rng), sd(rng));
        HermiteForm f = hermite_normal_form(m);
        CHECK(m * f.u == f.h);
        Int du = f.u.determinant();
        CHECK((du == 1 || du == -1));
    }
}

TEST_CASE("determinant agrees with permutation expansion") {
    std::mt19937 rng(42);
    for (int iter = 0; iter < 100; ++iter) {
        std::uniform_int_distribution<std::size_t> sd(1, 4);
        std::size_t n = sd(rng);
        IntMatrix m = random_matrix(rng, n, n);
        CHECK(m.determinant() == perm_det(m));
    }
}

TEST_CASE("solve_integer, solvable and unsolvable") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> sd(1, 6);
    for (int iter = 0; iter < 150; ++iter) {
        IntMatrix m = random_matrix(rng, sd(rng), sd(rng));
        IntMatrix x = random_matrix(rng, m.cols(), 1);
        IntVec b = m.apply(x.column_vec(0));
        auto sol = solve_integer(m, b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);
    }
    CHECK(!solve_integer(IntMatrix{{2}}, {Int(1)}));
    CHECK(!solve_integer(IntMatrix{{2, 4}, {1, 2}}, {Int(1), Int(1)}));
}

TEST_CASE("kernel_lattice spans the kernel") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> sd(0, 6);
    for (int iter = 0; iter < 150; ++iter) {
        IntMatrix m = random_matrix(rng, sd(rng), sd(rng));
        IntMatrix k = kernel_lattice(m);
        for (std::size_t j = 0; j < k.cols(); ++j) {
            IntVec img = m.apply(k.column_vec(j));
            for (const Int& v : img) CHECK(v == 0);
        }
        CHECK(k.cols() + rank(m) == m.cols());
        // every random kernel combination solves back through the basis
        if (k.cols() > 0) {
            IntMatrix c = random_matrix(rng, k.cols(), 1);
            IntVec v = k.apply(c.column_vec(0));
            CHECK(solve_integer(k, v).has_value());
        }
    }
}

TEST_CASE("solve_modulo and kernel_lattice_modulo") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<std::size_t> sd(1, 5);
    for (int iter = 0; iter < 150; ++iter) {
        IntMatrix m = random_matrix(rng, sd(rng), sd(rng));
        IntMatrix rel = random_matrix(rng, m.rows(), sd(rng) % 3);
        IntMatrix k = kernel_lattice_modulo(m, rel);
        for (std::size_t j = 0; j < k.cols(); ++j) {
            IntVec img = m.apply(k.column_vec(j));
            CHECK(solve_integer(rel, img).has_value());
        }
        // b built from a known solution plus relation noise must be solvable
        IntMatrix x = random_matrix(rng, m.cols(), 1);
        IntVec b = m.apply(x.column_vec(0));
        if (rel.cols() > 0) {
            IntMatrix y = random_matrix(rng, rel.cols(), 1);
            IntVec noise = rel.apply(y.column_vec(0));
            for (std::size_t i = 0; i < b.size(); ++i) b[i] += noise[i];
        }
        auto sol = solve_modulo(m, rel, b);
        REQUIRE(sol.has_value());
        IntVec diff = m.apply(*sol);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b[i];
        CHECK(solve_integer(rel, diff).has_value());
    }
}

TEST_CASE("matrix arithmetic basics") {
    IntMatrix a{{1, 2}, {3, 4}};
    IntMatrix b{{0, 1}, {1, 0}};
    CHECK(a * b == IntMatrix{{2, 1}, {4, 3}});
    CHECK(a + b - b == a);
    CHECK(a.transpose().transpose() == a);
    CHECK(IntMatrix::identity(3).is_identity());
    CHECK(a.hcat(b).cols() == 4);
    CHECK(a.hcat(IntMatrix(2, 0)) == a);
}
