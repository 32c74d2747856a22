#include "pvss/abgrp.hpp"

#include <sstream>
#include <stdexcept>

namespace pvss {

FgAbGroup::FgAbGroup(std::size_t gens, IntMatrix relations)
    : gens_(gens), relations_(std::move(relations)) {
    if (relations_.cols() > 0 && relations_.rows() != gens_)
        throw std::invalid_argument("FgAbGroup: relation matrix must have one row per generator");
    if (relations_.cols() == 0) relations_ = IntMatrix(gens_, 0);
    SmithForm f = smith_normal_form(relations_);
    rank_ = gens_ - f.rank;
    for (std::size_t i = 0; i < f.rank; ++i)
        if (f.d.at(i, i) > 1) torsion_.push_back(f.d.at(i, i));
}

FgAbGroup FgAbGroup::from_invariants(std::size_t rank, const std::vector<Int>& torsion) {
    std::size_t gens = rank + torsion.size();
    IntMatrix rel(gens, torsion.size());
    for (std::size_t i = 0; i < torsion.size(); ++i) rel.at(rank + i, i) = torsion[i];
    return FgAbGroup(gens, rel);
}

bool FgAbGroup::is_zero_element(const IntVec& x) const {
    return solve_integer(relations_, x).has_value();
}

std::string FgAbGroup::invariant_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank_ > 0) {
        os << "Z";
        if (rank_ > 1) os << "^" << rank_;
        first = false;
    }
    for (const auto& t : torsion_) {
        os << (first ? "" : " + ") << "Z/" << t;
        first = false;
    }
    return os.str();
}

std::pair<std::size_t, std::vector<Int>> canonical_invariants(const FgAbGroup& g) {
    return {g.rank(), g.torsion()};
}

bool iso_class_equal(const FgAbGroup& a, const FgAbGroup& b) {
    return a.rank() == b.rank() && a.torsion() == b.torsion();
}

GroupHom::GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.gens() || matrix_.cols() != source_.gens())
        throw std::invalid_argument("GroupHom: matrix shape must be target.gens x source.gens");
}

GroupHom GroupHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
    return GroupHom(source, target, IntMatrix(target.gens(), source.gens()));
}

GroupHom GroupHom::identity(const FgAbGroup& g) {
    return GroupHom(g, g, IntMatrix::identity(g.gens()));
}

GroupHom GroupHom::checked(FgAbGroup source, FgAbGroup target, IntMatrix matrix) {
    GroupHom f(std::move(source), std::move(target), std::move(matrix));
    if (!check_well_defined(f))
        throw std::invalid_argument("GroupHom: matrix does not respect the relations");
    return f;
}

bool GroupHom::is_zero_hom() const {
    // zero as a map of groups, not necessarily as a matrix
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
        if (!target_.is_zero_element(matrix_.column_vec(j))) return false;
    return true;
}

bool check_well_defined(const GroupHom& f) {
    const IntMatrix& rel = f.source().relations();
    for (std::size_t j = 0; j < rel.cols(); ++j) {
        IntVec img = f.matrix().apply(rel.column_vec(j));
        if (!solve_integer(f.target().relations(), img)) return false;
    }
    return true;
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
    if (f.target().gens() != g.source().gens() ||
        !(f.target().relations() == g.source().relations()))
        throw std::invalid_argument("compose: middle groups do not match");
    return GroupHom(f.source(), g.target(), g.matrix() * f.matrix());
}

KernelResult kernel(const GroupHom& f) {
    if (!check_well_defined(f)) throw std::invalid_argument("kernel: ill-defined hom");
    IntMatrix gens = kernel_lattice_modulo(f.matrix(), f.target().relations());
    Subgroup sub{f.source(), gens};
    auto [grp, incl] = present_subgroup(sub);
    return {grp, incl, sub};
}

CokernelResult cokernel(const GroupHom& f) {
    if (!check_well_defined(f)) throw std::invalid_argument("cokernel: ill-defined hom");
    FgAbGroup coker(f.target().gens(), f.target().relations().hcat(f.matrix()));
    GroupHom proj(f.target(), coker, IntMatrix::identity(f.target().gens()));
    return {coker, proj};
}

Subgroup image(const GroupHom& f) {
    if (!check_well_defined(f)) throw std::invalid_argument("image: ill-defined hom");
    return {f.target(), f.matrix()};
}

DirectSum direct_sum(const std::vector<FgAbGroup>& gs) {
    std::size_t gens = 0, rels = 0;
    for (const auto& g : gs) {
        gens += g.gens();
        rels += g.relations().cols();
    }
    IntMatrix rel(gens, rels);
    std::size_t go = 0, ro = 0;
    for (const auto& g : gs) {
        for (std::size_t i = 0; i < g.gens(); ++i)
            for (std::size_t j = 0; j < g.relations().cols(); ++j)
                rel.at(go + i, ro + j) = g.relations().at(i, j);
        go += g.gens();
        ro += g.relations().cols();
    }
    DirectSum out{FgAbGroup(gens, rel), {}, {}};
    go = 0;
    for (const auto& g : gs) {
        IntMatrix in(gens, g.gens()), pr(g.gens(), gens);
        for (std::size_t i = 0; i < g.gens(); ++i) {
            in.at(go + i, i) = 1;
            pr.at(i, go + i) = 1;
        }
        out.injections.emplace_back(g, out.group, in);
        out.projections.emplace_back(out.group, g, pr);
        go += g.gens();
    }
    return out;
}

Subquotient subquotient(const Subgroup& z, const Subgroup& b) {
    if (z.ambient.gens() != b.ambient.gens() ||
        !(z.ambient.relations() == b.ambient.relations()))
        throw std::invalid_argument("subquotient: ambient groups differ");
    if (!subgroup_contains(z, b.generators))
        throw std::invalid_argument("subquotient: boundaries not contained in cycles");
    IntMatrix mod = b.generators.hcat(z.ambient.relations());
    IntMatrix rel = kernel_lattice_modulo(z.generators, mod);
    FgAbGroup presented(z.generators.cols(), rel);
    return {z.ambient, z.generators, b.generators, presented, z.generators};
}

std::pair<FgAbGroup, GroupHom> present_subgroup(const Subgroup& s) {
    Subquotient q = subquotient(s, Subgroup{s.ambient, IntMatrix(s.ambient.gens(), 0)});
    GroupHom incl(q.presented, s.ambient, s.generators);
    return {q.presented, incl};
}

GroupHom induced_hom(const GroupHom& f, const Subquotient& src, const Subquotient& tgt) {
    if (src.ambient.gens() != f.source().gens() || tgt.ambient.gens() != f.target().gens())
        throw std::invalid_argument("induced_hom: ambient groups do not match the hom");
    IntMatrix mod = tgt.boundaries.hcat(tgt.ambient.relations());
    // boundaries must land in boundaries
    for (std::size_t j = 0; j < src.boundaries.cols(); ++j) {
        IntVec v = f.matrix().apply(src.boundaries.column_vec(j));
        if (!solve_modulo(tgt.boundaries, tgt.ambient.relations(), v))
            throw std::domain_error("induced_hom: boundaries do not map into boundaries");
    }
    IntMatrix out(tgt.presented.gens(), src.presented.gens());
    for (std::size_t j = 0; j < src.cycles.cols(); ++j) {
        IntVec v = f.matrix().apply(src.cycles.column_vec(j));
        auto y = solve_modulo(tgt.cycles, mod, v);
        if (!y) throw std::domain_error("induced_hom: cycles do not map into cycles");
        for (std::size_t i = 0; i < out.rows(); ++i) out.at(i, j) = (*y)[i];
    }
    GroupHom g(src.presented, tgt.presented, out);
    if (!check_well_defined(g))
        throw std::domain_error("induced_hom: map does not descend to the subquotients");
    return g;
}

bool subgroup_contains(const Subgroup& a, const IntMatrix& b_gens) {
    for (std::size_t j = 0; j < b_gens.cols(); ++j)
        if (!solve_modulo(a.generators, a.ambient.relations(), b_gens.column_vec(j)))
            return false;
    return true;
}

}  // namespace pvss
