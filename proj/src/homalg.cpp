#include "pvss/homalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pvss {

namespace {

bool composite_vanishes(const GroupHom& g, const GroupHom& f) {
    return compose(g, f).is_zero_hom();
}

IntMatrix kernel_gens(const GroupHom& f) {
    return kernel_lattice_modulo(f.matrix(), f.target().relations());
}

bool equal_subgroups(const FgAbGroup& ambient, const IntMatrix& a, const IntMatrix& b) {
    Subgroup sa{ambient, a}, sb{ambient, b};
    return subgroup_contains(sa, b) && subgroup_contains(sb, a);
}

// hom between presented subgroups induced by an ambient-level matrix
GroupHom restrict_hom(const IntMatrix& ambient_matrix, const KernelResult& src,
                      const KernelResult& tgt, const FgAbGroup& tgt_ambient) {
    IntMatrix out(tgt.group.gens(), src.group.gens());
    for (std::size_t j = 0; j < src.subgroup.generators.cols(); ++j) {
        IntVec v = ambient_matrix.apply(src.subgroup.generators.column_vec(j));
        auto y = solve_modulo(tgt.subgroup.generators, tgt_ambient.relations(), v);
        if (!y) throw std::domain_error("snake: kernel map does not restrict");
        for (std::size_t i = 0; i < out.rows(); ++i) out.at(i, j) = (*y)[i];
    }
    return GroupHom(src.group, tgt.group, out);
}

}  // namespace

CochainComplex::CochainComplex(std::map<int, FgAbGroup> groups,
                               std::map<int, GroupHom> differentials)
    : groups_(std::move(groups)), differentials_(std::move(differentials)) {
    if (!groups_.empty()) {
        min_deg_ = groups_.begin()->first;
        max_deg_ = groups_.rbegin()->first;
    }
    for (const auto& [p, d] : differentials_) {
        if (d.source().gens() != group_at(p).gens() ||
            d.target().gens() != group_at(p + 1).gens())
            throw std::invalid_argument("CochainComplex: differential shape mismatch at degree " +
                                        std::to_string(p));
        if (!check_well_defined(d))
            throw std::invalid_argument("CochainComplex: ill-defined differential at degree " +
                                        std::to_string(p));
    }
    for (const auto& [p, d] : differentials_) {
        auto next = differentials_.find(p + 1);
        if (next != differentials_.end() && !composite_vanishes(next->second, d))
            throw std::invalid_argument("CochainComplex: d∘d != 0 at degree " +
                                        std::to_string(p));
    }
}

const FgAbGroup& CochainComplex::group_at(int p) const {
    static const FgAbGroup trivial = FgAbGroup::trivial();
    auto it = groups_.find(p);
    return it == groups_.end() ? trivial : it->second;
}

const GroupHom& CochainComplex::differential_at(int p) const {
    auto it = differentials_.find(p);
    if (it == differentials_.end()) {
        auto [ins, ok] = differentials_.emplace(p, GroupHom::zero(group_at(p), group_at(p + 1)));
        it = ins;
    }
    return it->second;
}

Subquotient cohomology_subquotient_at(const CochainComplex& c, int p) {
    const FgAbGroup& g = c.group_at(p);
    IntMatrix cycles = kernel_gens(c.differential_at(p));
    IntMatrix boundaries = c.differential_at(p - 1).matrix();
    if (boundaries.cols() == 0) boundaries = IntMatrix(g.gens(), 0);
    return subquotient(Subgroup{g, cycles}, Subgroup{g, boundaries});
}

FgAbGroup cohomology_at(const CochainComplex& c, int p) {
    return cohomology_subquotient_at(c, p).presented;
}

SnakeResult snake(const SesLadder& ladder) {
    auto check_row = [](const ShortExactSeq& row, const char* name) {
        if (!check_well_defined(row.inj) || !check_well_defined(row.surj))
            throw std::invalid_argument(std::string("snake: ill-defined map in ") + name + " row");
        if (!kernel(row.inj).group.is_trivial())
            throw std::invalid_argument(std::string("snake: injection not injective in ") + name +
                                        " row");
        if (!cokernel(row.surj).group.is_trivial())
            throw std::invalid_argument(std::string("snake: surjection not surjective in ") + name +
                                        " row");
        if (!equal_subgroups(row.middle, row.inj.matrix(), kernel_gens(row.surj)))
            throw std::invalid_argument(std::string("snake: ") + name +
                                        " row not exact at the middle");
    };
    check_row(ladder.top, "top");
    check_row(ladder.bottom, "bottom");

    auto commutes = [](const GroupHom& p, const GroupHom& q) {
        GroupHom diff(p.source(), p.target(), p.matrix() - q.matrix());
        return diff.is_zero_hom();
    };
    if (!commutes(compose(ladder.b, ladder.top.inj), compose(ladder.bottom.inj, ladder.a)))
        throw std::invalid_argument("snake: left square does not commute");
    if (!commutes(compose(ladder.c, ladder.top.surj), compose(ladder.bottom.surj, ladder.b)))
        throw std::invalid_argument("snake: right square does not commute");

    KernelResult ka = kernel(ladder.a), kb = kernel(ladder.b), kc = kernel(ladder.c);
    CokernelResult ca = cokernel(ladder.a), cb = cokernel(ladder.b), cc = cokernel(ladder.c);

    // connecting hom: lift along the top surjection, apply b, pull back
    // along the bottom injection, project to coker(a)
    IntMatrix conn(ca.group.gens(), kc.group.gens());
    for (std::size_t j = 0; j < kc.subgroup.generators.cols(); ++j) {
        IntVec r = kc.subgroup.generators.column_vec(j);
        auto x = solve_modulo(ladder.top.surj.matrix(), ladder.top.right.relations(), r);
        if (!x) throw std::domain_error("snake: lift along the surjection failed");
        IntVec y = ladder.b.matrix().apply(*x);
        auto a = solve_modulo(ladder.bottom.inj.matrix(), ladder.bottom.middle.relations(), y);
        if (!a) throw std::domain_error("snake: pullback along the injection failed");
        for (std::size_t i = 0; i < conn.rows(); ++i) conn.at(i, j) = (*a)[i];
    }
    GroupHom connecting(kc.group, ca.group, conn);
    if (!check_well_defined(connecting))
        throw std::domain_error("snake: connecting hom is not well-defined");

    SixTermSequence six;
    six.groups = {ka.group, kb.group, kc.group, ca.group, cb.group, cc.group};
    six.maps.push_back(restrict_hom(ladder.top.inj.matrix(), ka, kb, ladder.top.middle));
    six.maps.push_back(restrict_hom(ladder.top.surj.matrix(), kb, kc, ladder.top.right));
    six.maps.push_back(connecting);
    six.maps.push_back(GroupHom::checked(ca.group, cb.group, ladder.bottom.inj.matrix()));
    six.maps.push_back(GroupHom::checked(cb.group, cc.group, ladder.bottom.surj.matrix()));
    return {connecting, six};
}

namespace {
Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
Bidegree operator-(Bidegree a, Bidegree b) { return {a.p - b.p, a.q - b.q}; }
}  // namespace

const FgAbGroup& ExactCouple::a_at(Bidegree d) const {
    static const FgAbGroup trivial = FgAbGroup::trivial();
    auto it = a_groups.find(d);
    return it == a_groups.end() ? trivial : it->second;
}

const FgAbGroup& ExactCouple::b_at(Bidegree d) const {
    static const FgAbGroup trivial = FgAbGroup::trivial();
    auto it = b_groups.find(d);
    return it == b_groups.end() ? trivial : it->second;
}

GroupHom ExactCouple::f_at(Bidegree d) const {
    auto it = f.find(d);
    return it != f.end() ? it->second : GroupHom::zero(a_at(d), a_at(d + f_deg));
}

GroupHom ExactCouple::g_at(Bidegree d) const {
    auto it = g.find(d);
    return it != g.end() ? it->second : GroupHom::zero(a_at(d), b_at(d + g_deg));
}

GroupHom ExactCouple::h_at(Bidegree d) const {
    auto it = h.find(d);
    return it != h.end() ? it->second : GroupHom::zero(b_at(d), a_at(d + h_deg));
}

std::optional<std::string> check_exact_couple(const ExactCouple& c) {
    auto fail = [](const char* node, Bidegree d) {
        std::ostringstream os;
        os << "exactness fails at " << node << " node (" << d.p << "," << d.q << ")";
        return os.str();
    };
    std::set<Bidegree> a_degs, b_degs;
    for (const auto& [d, g] : c.a_groups) a_degs.insert(d);
    for (const auto& [d, g] : c.b_groups) b_degs.insert(d);
    // neighbours of populated nodes, so trivial-group exactness is covered
    for (Bidegree d : std::set<Bidegree>(a_degs)) {
        a_degs.insert(d + c.f_deg);
        a_degs.insert(d - c.f_deg);
    }
    for (Bidegree d : std::set<Bidegree>(b_degs)) a_degs.insert(d + c.h_deg);

    for (Bidegree d : a_degs) {
        // im(f into d) = ker(g at d)
        if (!equal_subgroups(c.a_at(d), c.f_at(d - c.f_deg).matrix(), kernel_gens(c.g_at(d))))
            return fail("A(im f = ker g)", d);
        // im(h into d) = ker(f at d)
        if (!equal_subgroups(c.a_at(d), c.h_at(d - c.h_deg).matrix(), kernel_gens(c.f_at(d))))
            return fail("A(im h = ker f)", d);
    }
    for (Bidegree d : b_degs) {
        // im(g into d) = ker(h at d)
        if (!equal_subgroups(c.b_at(d), c.g_at(d - c.g_deg).matrix(), kernel_gens(c.h_at(d))))
            return fail("B(im g = ker h)", d);
    }
    return std::nullopt;
}

ExactCouple derive_couple(const ExactCouple& c) {
    if (auto err = check_exact_couple(c))
        throw std::invalid_argument("derive_couple: input not exact: " + *err);

    ExactCouple out;
    out.f_deg = c.f_deg;
    out.g_deg = c.g_deg - c.f_deg;  // g'(a) = [g(ā)] with a = f(ā)
    out.h_deg = c.h_deg;

    struct DerivedA {
        Subgroup gens;  // im(f) inside the old ambient A
        FgAbGroup presented;
    };
    struct DerivedB {
        Subquotient sq;  // ker(g∘h)/im(g∘h) inside the old ambient B
    };
    std::map<Bidegree, DerivedA> da;
    std::map<Bidegree, DerivedB> db;

    std::set<Bidegree> a_degs, b_degs;
    for (const auto& [d, g] : c.a_groups) {
        a_degs.insert(d);
        a_degs.insert(d + c.f_deg);
    }
    for (const auto& [d, g] : c.b_groups) b_degs.insert(d);

    for (Bidegree d : a_degs) {
        Subgroup im{c.a_at(d), c.f_at(d - c.f_deg).matrix()};
        auto [grp, incl] = present_subgroup(im);
        da[d] = {im, grp};
        // store even trivial presentations so that map shapes stay consistent
        // if this couple is derived again
        out.a_groups[d] = grp;
    }
    for (Bidegree d : b_degs) {
        GroupHom gh = compose(c.g_at(d + c.h_deg), c.h_at(d));
        IntMatrix cycles = kernel_gens(gh);
        GroupHom gh_in = compose(c.g_at(d - c.g_deg), c.h_at(d - c.g_deg - c.h_deg));
        Subquotient sq = subquotient(Subgroup{c.b_at(d), cycles},
                                     Subgroup{c.b_at(d), gh_in.matrix()});
        db[d] = {sq};
        out.b_groups[d] = sq.presented;
    }

    auto da_at = [&](Bidegree d) -> DerivedA& {
        auto it = da.find(d);
        if (it == da.end()) {
            Subgroup im{c.a_at(d), c.f_at(d - c.f_deg).matrix()};
            auto [grp, incl] = present_subgroup(im);
            it = da.emplace(d, DerivedA{im, grp}).first;
        }
        return it->second;
    };
    auto db_at = [&](Bidegree d) -> DerivedB& {
        auto it = db.find(d);
        if (it == db.end()) {
            GroupHom gh = compose(c.g_at(d + c.h_deg), c.h_at(d));
            GroupHom gh_in = compose(c.g_at(d - c.g_deg), c.h_at(d - c.g_deg - c.h_deg));
            Subquotient sq = subquotient(Subgroup{c.b_at(d), kernel_gens(gh)},
                                         Subgroup{c.b_at(d), gh_in.matrix()});
            it = db.emplace(d, DerivedB{sq}).first;
        }
        return it->second;
    };

    for (Bidegree d : a_degs) {
        DerivedA& src = da_at(d);
        // f' induced on images
        {
            DerivedA& tgt = da_at(d + c.f_deg);
            IntMatrix m(tgt.presented.gens(), src.presented.gens());
            for (std::size_t j = 0; j < src.gens.generators.cols(); ++j) {
                IntVec v = c.f_at(d).matrix().apply(src.gens.generators.column_vec(j));
                auto y = solve_modulo(tgt.gens.generators, tgt.gens.ambient.relations(), v);
                if (!y) throw std::invalid_argument("derive_couple: f does not restrict to im(f)");
                for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = (*y)[i];
            }
            out.f[d] = GroupHom::checked(src.presented, tgt.presented, m);
        }
        // g'(a) = [g(ā)] for a = f(ā)
        {
            Bidegree td = d + out.g_deg;
            DerivedB& tgt = db_at(td);
            IntMatrix m(tgt.sq.presented.gens(), src.presented.gens());
            IntMatrix mod = tgt.sq.boundaries.hcat(tgt.sq.ambient.relations());
            for (std::size_t j = 0; j < src.gens.generators.cols(); ++j) {
                IntVec a = src.gens.generators.column_vec(j);
                auto pre = solve_modulo(c.f_at(d - c.f_deg).matrix(), c.a_at(d).relations(), a);
                if (!pre)
                    throw std::invalid_argument("derive_couple: element of im(f) has no preimage");
                IntVec gb = c.g_at(d - c.f_deg).matrix().apply(*pre);
                auto y = solve_modulo(tgt.sq.cycles, mod, gb);
                if (!y) throw std::invalid_argument("derive_couple: g' lands outside ker(g∘h)");
                for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = (*y)[i];
            }
            out.g[d] = GroupHom::checked(src.presented, tgt.sq.presented, m);
        }
    }
    for (Bidegree d : b_degs) {
        DerivedB& src = db_at(d);
        DerivedA& tgt = da_at(d + c.h_deg);
        IntMatrix m(tgt.presented.gens(), src.sq.presented.gens());
        for (std::size_t j = 0; j < src.sq.cycles.cols(); ++j) {
            IntVec hb = c.h_at(d).matrix().apply(src.sq.cycles.column_vec(j));
            auto y = solve_modulo(tgt.gens.generators, tgt.gens.ambient.relations(), hb);
            if (!y) throw std::invalid_argument("derive_couple: h(ker(g∘h)) lands outside im(f)");
            for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = (*y)[i];
        }
        out.h[d] = GroupHom::checked(src.sq.presented, tgt.presented, m);
    }
    return out;
}

std::string ExtensionReport::to_string() const {
    std::ostringstream os;
    if (determined) {
        os << group.invariant_string() << " (determined)";
    } else {
        os << "ambiguous (rank " << rank;
        if (!candidates.empty()) {
            os << "; candidates:";
            for (const auto& [r, tor] : candidates) {
                FgAbGroup g = FgAbGroup::from_invariants(r, tor);
                os << " " << g.invariant_string();
            }
        }
        os << ")";
    }
    return os.str();
}

namespace {

// All abelian groups of order n, as lists of cyclic factor orders.
void abelian_groups_of_order(unsigned long n, std::vector<std::vector<unsigned long>>& out) {
    std::vector<std::pair<unsigned long, unsigned>> fact;
    unsigned long m = n;
    for (unsigned long p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            fact.push_back({p, e});
        }
    if (m > 1) fact.push_back({m, 1});

    std::vector<std::vector<std::vector<unsigned>>> partitions(fact.size());
    for (std::size_t i = 0; i < fact.size(); ++i) {
        std::vector<unsigned> cur;
        std::function<void(unsigned, unsigned)> rec = [&](unsigned rem, unsigned maxp) {
            if (rem == 0) {
                partitions[i].push_back(cur);
                return;
            }
            for (unsigned k = std::min(rem, maxp); k >= 1; --k) {
                cur.push_back(k);
                rec(rem - k, k);
                cur.pop_back();
            }
        };
        rec(fact[i].second, fact[i].second);
    }

    std::vector<std::size_t> idx(fact.size(), 0);
    while (true) {
        std::vector<unsigned long> factors;  // primary cyclic orders
        for (std::size_t i = 0; i < fact.size(); ++i)
            for (unsigned e : partitions[i][idx[i]]) {
                unsigned long pe = 1;
                for (unsigned k = 0; k < e; ++k) pe *= fact[i].first;
                factors.push_back(pe);
            }
        out.push_back(factors);
        std::size_t i = 0;
        for (; i < fact.size(); ++i) {
            if (++idx[i] < partitions[i].size()) break;
            idx[i] = 0;
        }
        if (i == fact.size()) break;
        if (fact.empty()) break;
    }
    if (fact.empty()) out.push_back({});
}

// #{x in Z/m1 x ... x Z/mk : d*x = 0}
unsigned long count_killed(const std::vector<unsigned long>& moduli, unsigned long d) {
    unsigned long c = 1;
    for (unsigned long m : moduli) c *= std::gcd(m, d);
    return c;
}

unsigned long torsion_order(const FgAbGroup& g) {
    unsigned long n = 1;
    for (const auto& t : g.torsion()) n *= t.get_ui();
    return n;
}

std::vector<unsigned long> torsion_moduli(const FgAbGroup& g) {
    std::vector<unsigned long> out;
    for (const auto& t : g.torsion()) out.push_back(t.get_ui());
    return out;
}

struct FiniteGroup {
    std::vector<unsigned long> moduli;
    std::vector<std::vector<unsigned long>> elements;

    explicit FiniteGroup(std::vector<unsigned long> mods) : moduli(std::move(mods)) {
        std::vector<unsigned long> cur(moduli.size(), 0);
        while (true) {
            elements.push_back(cur);
            std::size_t i = 0;
            for (; i < moduli.size(); ++i) {
                if (++cur[i] < moduli[i]) break;
                cur[i] = 0;
            }
            if (i == moduli.size()) break;
        }
        if (moduli.empty()) elements = {{}};
    }

    std::vector<unsigned long> add(const std::vector<unsigned long>& a,
                                   const std::vector<unsigned long>& b) const {
        std::vector<unsigned long> c(moduli.size());
        for (std::size_t i = 0; i < moduli.size(); ++i) c[i] = (a[i] + b[i]) % moduli[i];
        return c;
    }
    std::vector<unsigned long> mul(const std::vector<unsigned long>& a, unsigned long k) const {
        std::vector<unsigned long> c(moduli.size());
        for (std::size_t i = 0; i < moduli.size(); ++i) c[i] = (a[i] * k) % moduli[i];
        return c;
    }
};

// all subgroups of a small finite abelian group, as element sets
std::vector<std::set<std::vector<unsigned long>>> all_subgroups(const FiniteGroup& g) {
    using ElemSet = std::set<std::vector<unsigned long>>;
    auto closure = [&](ElemSet s) {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::vector<unsigned long>> cur(s.begin(), s.end());
            for (const auto& a : cur)
                for (const auto& b : cur)
                    if (s.insert(g.add(a, b)).second) grew = true;
        }
        return s;
    };
    std::set<ElemSet> subs;
    ElemSet zero{std::vector<unsigned long>(g.moduli.size(), 0)};
    subs.insert(zero);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<ElemSet> cur(subs.begin(), subs.end());
        for (const auto& s : cur)
            for (const auto& x : g.elements) {
                if (s.count(x)) continue;
                ElemSet bigger = s;
                bigger.insert(x);
                if (subs.insert(closure(std::move(bigger))).second) grew = true;
            }
    }
    return {subs.begin(), subs.end()};
}

}  // namespace

ExtensionReport assemble_extension(const FgAbGroup& sub, const FgAbGroup& quot,
                                   unsigned long candidate_bound) {
    ExtensionReport rep;
    rep.sub = sub;
    rep.quot = quot;
    rep.rank = sub.rank() + quot.rank();

    if (quot.is_free() || sub.is_trivial()) {
        DirectSum ds = direct_sum({sub, quot});
        rep.determined = true;
        rep.group = FgAbGroup::from_invariants(ds.group.rank(), ds.group.torsion());
        return rep;
    }

    if (sub.rank() == 0 && quot.rank() == 0) {
        unsigned long n = torsion_order(sub) * torsion_order(quot);
        if (n <= candidate_bound) {
            std::vector<std::vector<unsigned long>> types;
            abelian_groups_of_order(n, types);
            std::set<std::pair<std::size_t, std::vector<Int>>> found;
            std::vector<unsigned long> sub_mod = torsion_moduli(sub);
            std::vector<unsigned long> quot_mod = torsion_moduli(quot);
            unsigned long sub_n = torsion_order(sub);
            for (const auto& type : types) {
                FiniteGroup g(type);
                bool ok = false;
                for (const auto& h : all_subgroups(g)) {
                    if (h.size() != sub_n) continue;
                    // compare order profiles of H with sub and G/H with quot
                    bool match = true;
                    std::vector<unsigned long> zero(g.moduli.size(), 0);
                    for (unsigned long d = 1; d <= n && match; ++d) {
                        unsigned long in_h = 0;
                        for (const auto& x : h)
                            if (g.mul(x, d) == zero) ++in_h;
                        if (in_h != count_killed(sub_mod, d)) match = false;
                        if (!match) break;
                        unsigned long in_q = 0;
                        for (const auto& x : g.elements)
                            if (h.count(g.mul(x, d))) ++in_q;
                        if (in_q / h.size() != count_killed(quot_mod, d)) match = false;
                    }
                    if (match) {
                        ok = true;
                        break;
                    }
                }
                if (ok) {
                    IntMatrix rel(type.size(), type.size());
                    for (std::size_t i = 0; i < type.size(); ++i)
                        rel.at(i, i) = static_cast<long>(type[i]);
                    FgAbGroup cand(type.size(), rel);
                    found.insert({cand.rank(), cand.torsion()});
                }
            }
            rep.candidates.assign(found.begin(), found.end());
        }
    }
    return rep;
}

ExtensionReport assemble_filtration(const std::vector<FgAbGroup>& pieces,
                                    unsigned long candidate_bound) {
    ExtensionReport rep;
    rep.determined = true;
    rep.group = FgAbGroup::trivial();
    for (const auto& piece : pieces) {
        if (rep.determined) {
            ExtensionReport step = assemble_extension(rep.group, piece, candidate_bound);
            step.rank = rep.rank + piece.rank();
            rep = step;
        } else {
            rep.determined = false;
            rep.rank += piece.rank();
            rep.candidates.clear();
        }
    }
    return rep;
}

std::pair<ExtensionReport, ExtensionReport> six_term_solve(const GroupHom& a0,
                                                           const GroupHom& a1) {
    for (const GroupHom* a : {&a0, &a1}) {
        if (a->source().gens() != a->target().gens() ||
            !(a->source().relations() == a->target().relations()))
            throw std::invalid_argument("six_term_solve: maps must be endomorphisms");
        if (!check_well_defined(*a))
            throw std::invalid_argument("six_term_solve: ill-defined hom");
    }
    ExtensionReport k0 = assemble_extension(cokernel(a0).group, kernel(a1).group);
    ExtensionReport k1 = assemble_extension(cokernel(a1).group, kernel(a0).group);
    return {k0, k1};
}

}  // namespace pvss
