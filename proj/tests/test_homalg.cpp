#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "util.hpp"

#include <random>

using namespace pvss;
using testutil::random_matrix;

namespace {

// exactness of G_{i-1} -> G_i -> G_{i+1} at G_i: zero composite and trivial ker/im quotient
bool exact_at(const GroupHom& in, const GroupHom& out) {
    if (!compose(out, in).is_zero_hom()) return false;
    KernelResult k = kernel(out);
    Subquotient sq = subquotient(k.subgroup, Subgroup{out.source(), in.matrix()});
    return sq.presented.is_trivial();
}

bool six_term_exact(const SixTermSequence& s) {
    if (!kernel(s.maps[0]).group.is_trivial()) return false;
    if (!cokernel(s.maps[4]).group.is_trivial()) return false;
    for (int i = 1; i <= 4; ++i)
        if (!exact_at(s.maps[i - 1], s.maps[i])) return false;
    return true;
}

SesLadder split_ladder(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> sd(0, 3);
    FgAbGroup a = FgAbGroup::free_group(sd(rng));
    FgAbGroup b = FgAbGroup::free_group(sd(rng));
    FgAbGroup c = testutil::random_group(rng);
    FgAbGroup d = testutil::random_group(rng);
    DirectSum top = direct_sum({a, b});
    DirectSum bot = direct_sum({c, d});
    SesLadder lad{{a, top.group, b, top.injections[0],
                   GroupHom(top.group, b, top.projections[1].matrix())},
                  {c, bot.group, d, bot.injections[0],
                   GroupHom(bot.group, d, bot.projections[1].matrix())},
                  GroupHom(a, c, random_matrix(rng, c.gens(), a.gens(), -3, 3)),
                  GroupHom(top.group, bot.group, IntMatrix(bot.group.gens(), top.group.gens())),
                  GroupHom(b, d, random_matrix(rng, d.gens(), b.gens(), -3, 3))};
    // middle vertical [[a, t], [0, c]] with a random off-diagonal block
    IntMatrix t = random_matrix(rng, c.gens(), b.gens(), -3, 3);
    IntMatrix m(bot.group.gens(), top.group.gens());
    for (std::size_t i = 0; i < c.gens(); ++i) {
        for (std::size_t j = 0; j < a.gens(); ++j) m.at(i, j) = lad.a.matrix().at(i, j);
        for (std::size_t j = 0; j < b.gens(); ++j) m.at(i, a.gens() + j) = t.at(i, j);
    }
    for (std::size_t i = 0; i < d.gens(); ++i)
        for (std::size_t j = 0; j < b.gens(); ++j)
            m.at(c.gens() + i, a.gens() + j) = lad.c.matrix().at(i, j);
    lad.b = GroupHom(top.group, bot.group, m);
    return lad;
}

// exact triangle at a point: G --u--> G --g--> coker(u) ⊕ ker(u) --h--> G
void point_couple(ExactCouple& c, Bidegree d, const GroupHom& u) {
    CokernelResult ck = cokernel(u);
    KernelResult kr = kernel(u);
    DirectSum b = direct_sum({ck.group, kr.group});
    c.a_groups[d] = u.source();
    c.b_groups[d] = b.group;
    c.f[d] = u;
    c.g[d] = compose(b.injections[0], ck.projection);
    c.h[d] = compose(kr.inclusion, b.projections[1]);
}

}  // namespace

TEST_CASE("cochain complex cohomology, frozen") {
    // 0 -> Z --(2,0)--> Z^2 --(0 1)--> Z -> 0 : H^0 = 0, H^1 = Z/2, H^2 = 0
    std::map<int, FgAbGroup> groups{{0, FgAbGroup::free_group(1)},
                                    {1, FgAbGroup::free_group(2)},
                                    {2, FgAbGroup::free_group(1)}};
    std::map<int, GroupHom> diffs;
    diffs.emplace(0, GroupHom(groups[0], groups[1], IntMatrix{{2}, {0}}));
    diffs.emplace(1, GroupHom(groups[1], groups[2], IntMatrix{{0, 1}}));
    CochainComplex c(groups, diffs);
    CHECK(cohomology_at(c, 0).is_trivial());
    CHECK(cohomology_at(c, 1).invariant_string() == "Z/2");
    CHECK(cohomology_at(c, 2).is_trivial());
}

TEST_CASE("cochain complex rejects nonzero composites") {
    std::map<int, FgAbGroup> groups{{0, FgAbGroup::free_group(1)},
                                    {1, FgAbGroup::free_group(1)},
                                    {2, FgAbGroup::free_group(1)}};
    std::map<int, GroupHom> diffs;
    diffs.emplace(0, GroupHom(groups[0], groups[1], IntMatrix{{1}}));
    diffs.emplace(1, GroupHom(groups[1], groups[2], IntMatrix{{1}}));
    CHECK_THROWS_AS(CochainComplex(groups, diffs), std::invalid_argument);
}

TEST_CASE("snake, hand-chased example") {
    // rows 0 -> Z -> Z^2 -> Z -> 0 (split); verticals x2, [[2,1],[0,3]], x3
    FgAbGroup z = FgAbGroup::free_group(1), z2 = FgAbGroup::free_group(2);
    SesLadder lad{{z, z2, z, GroupHom(z, z2, IntMatrix{{1}, {0}}),
                   GroupHom(z2, z, IntMatrix{{0, 1}})},
                  {z, z2, z, GroupHom(z, z2, IntMatrix{{1}, {0}}),
                   GroupHom(z2, z, IntMatrix{{0, 1}})},
                  GroupHom(z, z, IntMatrix{{2}}),
                  GroupHom(z2, z2, IntMatrix{{2, 1}, {0, 3}}),
                  GroupHom(z, z, IntMatrix{{3}})};
    SnakeResult r = snake(lad);
    // all verticals injective: kernels vanish, cokernels are Z/2, Z/6, Z/3
    CHECK(r.sixterm.groups[0].is_trivial());
    CHECK(r.sixterm.groups[1].is_trivial());
    CHECK(r.sixterm.groups[2].is_trivial());
    CHECK(r.sixterm.groups[3].invariant_string() == "Z/2");
    CHECK(r.sixterm.groups[4].invariant_string() == "Z/6");
    CHECK(r.sixterm.groups[5].invariant_string() == "Z/3");
    CHECK(six_term_exact(r.sixterm));
}

TEST_CASE("snake with a nontrivial connecting map") {
    // verticals 0, [[0,1],[0,0]], 0: connecting is the identity Z -> Z
    FgAbGroup z = FgAbGroup::free_group(1), z2 = FgAbGroup::free_group(2);
    SesLadder lad{{z, z2, z, GroupHom(z, z2, IntMatrix{{1}, {0}}),
                   GroupHom(z2, z, IntMatrix{{0, 1}})},
                  {z, z2, z, GroupHom(z, z2, IntMatrix{{1}, {0}}),
                   GroupHom(z2, z, IntMatrix{{0, 1}})},
                  GroupHom::zero(z, z),
                  GroupHom(z2, z2, IntMatrix{{0, 1}, {0, 0}}),
                  GroupHom::zero(z, z)};
    SnakeResult r = snake(lad);
    CHECK(r.connecting.source().invariant_string() == "Z");
    CHECK(r.connecting.target().invariant_string() == "Z");
    CHECK(!r.connecting.is_zero_hom());
    CHECK(six_term_exact(r.sixterm));
}

TEST_CASE("snake on random split ladders is exact") {
    std::mt19937 rng(2024);
    int done = 0;
    while (done < 40) {
        SesLadder lad = split_ladder(rng);
        SnakeResult r = snake(lad);
        CHECK(six_term_exact(r.sixterm));
        ++done;
    }
}

TEST_CASE("snake rejects bad ladders") {
    FgAbGroup z = FgAbGroup::free_group(1), z2 = FgAbGroup::free_group(2);
    // non-exact top row: inj not injective
    SesLadder lad{{z, z2, z, GroupHom::zero(z, z2), GroupHom(z2, z, IntMatrix{{0, 1}})},
                  {z, z2, z, GroupHom(z, z2, IntMatrix{{1}, {0}}),
                   GroupHom(z2, z, IntMatrix{{0, 1}})},
                  GroupHom::zero(z, z), GroupHom::zero(z2, z2), GroupHom::zero(z, z)};
    CHECK_THROWS_AS(snake(lad), std::invalid_argument);
}

TEST_CASE("exact couples: point couples are exact, and so are their derived couples") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        ExactCouple c;
        c.f_deg = c.g_deg = c.h_deg = {0, 0};
        std::uniform_int_distribution<int> bd(0, 2);
        for (int s = 0; s <= bd(rng); ++s) {
            FgAbGroup g = testutil::random_group(rng);
            point_couple(c, {s, 0}, testutil::random_endo(rng, g));
        }
        CHECK(check_exact_couple(c) == std::nullopt);
        ExactCouple d = derive_couple(c);
        CHECK(check_exact_couple(d) == std::nullopt);
        ExactCouple dd = derive_couple(d);
        CHECK(check_exact_couple(dd) == std::nullopt);
    }
}

TEST_CASE("exact couple detection of a broken couple") {
    ExactCouple c;
    c.f_deg = c.g_deg = c.h_deg = {0, 0};
    FgAbGroup z = FgAbGroup::free_group(1);
    point_couple(c, {0, 0}, GroupHom(z, z, IntMatrix{{2}}));
    c.g[{0, 0}] = GroupHom::zero(z, c.b_at({0, 0}));  // break im f = ker g
    CHECK(check_exact_couple(c).has_value());
}

TEST_CASE("derived Bockstein couple of x2 on Z") {
    ExactCouple c;
    c.f_deg = c.g_deg = c.h_deg = {0, 0};
    FgAbGroup z = FgAbGroup::free_group(1);
    point_couple(c, {0, 0}, GroupHom(z, z, IntMatrix{{2}}));
    CHECK(c.b_at({0, 0}).invariant_string() == "Z/2");
    ExactCouple d = derive_couple(c);
    CHECK(d.a_at({0, 0}).invariant_string() == "Z");   // 2Z
    CHECK(d.b_at({0, 0}).invariant_string() == "Z/2");  // g∘h = 0 here
}

TEST_CASE("extension assembly") {
    FgAbGroup z = FgAbGroup::free_group(1);
    FgAbGroup z2t = FgAbGroup::from_invariants(0, {2});

    ExtensionReport r1 = assemble_extension(z2t, z);
    CHECK(r1.determined);
    CHECK(r1.group.invariant_string() == "Z + Z/2");

    ExtensionReport r2 = assemble_extension(z, z2t);
    CHECK(!r2.determined);
    CHECK(r2.rank == 1);

    ExtensionReport r3 = assemble_extension(z2t, z2t);
    CHECK(!r3.determined);
    REQUIRE(r3.candidates.size() == 2);  // Z/4 and Z/2 + Z/2

    ExtensionReport r4 = assemble_extension(FgAbGroup::trivial(), z2t);
    CHECK(r4.determined);
    CHECK(r4.group.invariant_string() == "Z/2");

    // order 128 > bound: ambiguous without a candidate list
    FgAbGroup big = FgAbGroup::from_invariants(0, {2, 8});
    ExtensionReport r5 = assemble_extension(big, FgAbGroup::from_invariants(0, {8}));
    CHECK(!r5.determined);
    CHECK(r5.candidates.empty());
}

TEST_CASE("filtration assembly") {
    FgAbGroup z3 = FgAbGroup::free_group(3);
    FgAbGroup mixed = FgAbGroup::from_invariants(1, {6, 6});
    ExtensionReport r = assemble_filtration({mixed, z3, z3});
    CHECK(r.determined);
    CHECK(r.group.rank() == 7);
    CHECK(r.group.torsion() == std::vector<Int>{6, 6});
}

TEST_CASE("six-term solve, frozen") {
    FgAbGroup z2 = FgAbGroup::free_group(2);
    GroupHom a0 = GroupHom::zero(z2, z2);
    GroupHom a1(z2, z2, IntMatrix{{0, 1}, {0, 0}});
    auto [k0, k1] = six_term_solve(a0, a1);
    CHECK(k0.determined);
    CHECK(k0.group.invariant_string() == "Z^3");
    CHECK(k1.determined);
    CHECK(k1.group.invariant_string() == "Z^3");
}
