#pragma once

#include "pvss/specseq.hpp"

#include <random>

namespace testutil {

using namespace pvss;

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols,
                               int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = d(rng);
    return m;
}

// Group of the form Z^r + (Z/t)^s with a single torsion order, so that any
// endomorphism with vanishing free part on the torsion columns is well defined.
inline FgAbGroup random_group(std::mt19937& rng, std::size_t max_rank = 3, int max_torsion = 4) {
    std::uniform_int_distribution<std::size_t> rd(0, max_rank);
    std::uniform_int_distribution<int> td(0, max_torsion);
    std::size_t r = rd(rng);
    int t = td(rng);
    std::vector<Int> tor;
    if (t >= 2) {
        std::uniform_int_distribution<std::size_t> sd(1, 2);
        for (std::size_t i = 0; i < sd(rng); ++i) tor.push_back(t);
    }
    return FgAbGroup::from_invariants(r, tor);
}

// Random well-defined endomorphism of a random_group-shaped group.
inline GroupHom random_endo(std::mt19937& rng, const FgAbGroup& g) {
    std::size_t r = g.rank(), s = g.torsion().size();
    IntMatrix m = random_matrix(rng, g.gens(), g.gens(), -3, 3);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j) m.at(i, r + j) = 0;
    return GroupHom(g, g, m);
}

// Commuting tuples via polynomials in one well-defined base endomorphism.
inline std::vector<GroupHom> random_commuting(std::mt19937& rng, const FgAbGroup& g, int n) {
    GroupHom base = random_endo(rng, g);
    std::uniform_int_distribution<int> cd(-1, 1);
    std::vector<GroupHom> out;
    for (int k = 0; k < n; ++k) {
        IntMatrix acc = IntMatrix::identity(g.gens());
        IntMatrix pw = IntMatrix::identity(g.gens());
        for (int deg = 1; deg <= 2; ++deg) {
            pw = pw * base.matrix();
            int c = cd(rng);
            if (c == 0) continue;
            IntMatrix scaled = pw;
            for (std::size_t i = 0; i < scaled.rows(); ++i)
                for (std::size_t j = 0; j < scaled.cols(); ++j) scaled.at(i, j) *= c;
            acc = acc + scaled;
        }
        out.emplace_back(g, g, acc);
    }
    return out;
}

inline ActionSpec random_spec(std::mt19937& rng, int max_n = 3) {
    std::uniform_int_distribution<int> nd(1, max_n);
    ActionSpec spec;
    spec.n = nd(rng);
    spec.k0 = random_group(rng);
    spec.k1 = random_group(rng);
    spec.action0 = random_commuting(rng, spec.k0, spec.n);
    spec.action1 = random_commuting(rng, spec.k1, spec.n);
    spec.assume_higher_vanish = true;
    return spec;
}

}  // namespace testutil
