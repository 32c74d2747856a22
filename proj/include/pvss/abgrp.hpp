#pragma once

#include "pvss/intmat.hpp"

#include <utility>
#include <vector>

namespace pvss {

/// Finitely generated abelian group Z^gens modulo the column span of the
/// relation matrix. Canonical invariants (free rank, torsion divisor chain
/// with unit divisors dropped) are computed on construction.
class FgAbGroup {
public:
    FgAbGroup() : gens_(0), relations_(0, 0) {}
    explicit FgAbGroup(std::size_t gens) : FgAbGroup(gens, IntMatrix(gens, 0)) {}
    FgAbGroup(std::size_t gens, IntMatrix relations);

    static FgAbGroup free_group(std::size_t rank) { return FgAbGroup(rank); }
    static FgAbGroup trivial() { return FgAbGroup(0); }
    static FgAbGroup from_invariants(std::size_t rank, const std::vector<Int>& torsion);

    std::size_t gens() const { return gens_; }
    const IntMatrix& relations() const { return relations_; }

    std::size_t rank() const { return rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    bool is_free() const { return torsion_.empty(); }
    bool is_trivial() const { return rank_ == 0 && torsion_.empty(); }

    /// True iff the element given in generator coordinates is zero in the group.
    bool is_zero_element(const IntVec& x) const;

    std::string invariant_string() const;

private:
    std::size_t gens_;
    IntMatrix relations_;
    std::size_t rank_ = 0;
    std::vector<Int> torsion_;
};

std::pair<std::size_t, std::vector<Int>> canonical_invariants(const FgAbGroup& g);
bool iso_class_equal(const FgAbGroup& a, const FgAbGroup& b);

class GroupHom {
public:
    GroupHom() = default;
    /// Throws if the matrix shape does not fit; well-definedness is checked
    /// separately (check_well_defined) or eagerly via checked().
    GroupHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

    static GroupHom zero(const FgAbGroup& source, const FgAbGroup& target);
    static GroupHom identity(const FgAbGroup& g);
    /// Validating constructor: throws std::invalid_argument on an ill-defined hom.
    static GroupHom checked(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

    const FgAbGroup& source() const { return source_; }
    const FgAbGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    bool is_zero_hom() const;

private:
    FgAbGroup source_, target_;
    IntMatrix matrix_;
};

bool check_well_defined(const GroupHom& f);
GroupHom compose(const GroupHom& g, const GroupHom& f);

struct Subgroup {
    FgAbGroup ambient;
    IntMatrix generators;  // ambient.gens x k
};

/// Subquotient cycles/boundaries with a presentation and an ambient
/// representative for each presented generator (columns of rep).
struct Subquotient {
    FgAbGroup ambient;
    IntMatrix cycles;      // ambient.gens x z
    IntMatrix boundaries;  // ambient.gens x b
    FgAbGroup presented;
    IntMatrix rep;  // ambient.gens x presented.gens; equals cycles
};

struct KernelResult {
    FgAbGroup group;
    GroupHom inclusion;  // into f.source
    Subgroup subgroup;   // of f.source
};

struct CokernelResult {
    FgAbGroup group;
    GroupHom projection;  // from f.target
};

KernelResult kernel(const GroupHom& f);
CokernelResult cokernel(const GroupHom& f);
Subgroup image(const GroupHom& f);

struct DirectSum {
    FgAbGroup group;
    std::vector<GroupHom> injections;
    std::vector<GroupHom> projections;
};

DirectSum direct_sum(const std::vector<FgAbGroup>& gs);

/// Presents the subquotient z/b; throws if b is not contained in z.
Subquotient subquotient(const Subgroup& z, const Subgroup& b);

/// Presents the subgroup generated by the given ambient columns, together
/// with the inclusion hom.
std::pair<FgAbGroup, GroupHom> present_subgroup(const Subgroup& s);

/// Map induced on subquotients by an ambient hom f; checks that f carries
/// cycles into cycles and boundaries into boundaries (mod relations) and
/// throws std::domain_error otherwise.
GroupHom induced_hom(const GroupHom& f, const Subquotient& src, const Subquotient& tgt);

/// True iff every generator of b lies in the subgroup spanned by a's
/// generators together with the ambient relations.
bool subgroup_contains(const Subgroup& a, const IntMatrix& b_gens);

}  // namespace pvss
