#pragma once

#include "pvss/abgrp.hpp"

#include <map>
#include <optional>
#include <vector>

namespace pvss {

/// Cochain complex of finitely generated abelian groups, finitely supported.
/// Differentials raise the degree by one; consecutive composites must vanish.
class CochainComplex {
public:
    CochainComplex(std::map<int, FgAbGroup> groups, std::map<int, GroupHom> differentials);

    const FgAbGroup& group_at(int p) const;
    const GroupHom& differential_at(int p) const;  // zero hom if unset
    int min_degree() const { return min_deg_; }
    int max_degree() const { return max_deg_; }

private:
    std::map<int, FgAbGroup> groups_;
    mutable std::map<int, GroupHom> differentials_;
    int min_deg_ = 0, max_deg_ = -1;
};

FgAbGroup cohomology_at(const CochainComplex& c, int p);
Subquotient cohomology_subquotient_at(const CochainComplex& c, int p);

struct ShortExactSeq {
    FgAbGroup left, middle, right;
    GroupHom inj;   // left -> middle
    GroupHom surj;  // middle -> right
};

struct SesLadder {
    ShortExactSeq top, bottom;
    GroupHom a, b, c;  // verticals: left, middle, right
};

struct SixTermSequence {
    // 0 -> ker a -> ker b -> ker c -> coker a -> coker b -> coker c -> 0
    std::vector<FgAbGroup> groups;  // six groups in order
    std::vector<GroupHom> maps;     // five maps in order; maps[2] is the connecting hom
};

struct SnakeResult {
    GroupHom connecting;  // ker(c) -> coker(a)
    SixTermSequence sixterm;
};

/// Validates the ladder (row exactness, commuting squares) and performs the
/// standard chase. Throws std::invalid_argument on a bad ladder and
/// std::domain_error if the chase fails.
SnakeResult snake(const SesLadder& ladder);

struct Bidegree {
    int p, q;
    auto operator<=>(const Bidegree&) const = default;
};

/// Exact couple with bigraded groups A, B and maps f: A->A, g: A->B,
/// h: B->A of the declared bidegrees. Groups are finitely supported;
/// missing bidegrees are trivial.
struct ExactCouple {
    std::map<Bidegree, FgAbGroup> a_groups;
    std::map<Bidegree, FgAbGroup> b_groups;
    std::map<Bidegree, GroupHom> f, g, h;
    Bidegree f_deg, g_deg, h_deg;

    const FgAbGroup& a_at(Bidegree d) const;
    const FgAbGroup& b_at(Bidegree d) const;
    GroupHom f_at(Bidegree d) const;
    GroupHom g_at(Bidegree d) const;
    GroupHom h_at(Bidegree d) const;
};

/// Checks exactness at every populated node; returns the failing bidegree
/// and node name, or nullopt when exact.
std::optional<std::string> check_exact_couple(const ExactCouple& c);

/// Derived couple: A' = im(f), B' = ker(g∘h)/im(g∘h), with g'(a) = [g(ā)]
/// for a = f(ā) and h'([b]) = h(b). h' picks up f's bidegree deficit.
ExactCouple derive_couple(const ExactCouple& c);

struct ExtensionReport {
    FgAbGroup sub, quot;
    bool determined = false;
    FgAbGroup group;  // meaningful when determined
    std::size_t rank = 0;
    // candidate invariant lists, populated for small finite ambiguous cases
    std::vector<std::pair<std::size_t, std::vector<Int>>> candidates;

    std::string to_string() const;
};

/// Resolves 0 -> sub -> ? -> quot -> 0 as far as the invariants allow.
/// candidate_bound caps the exhaustive enumeration of finite extensions.
ExtensionReport assemble_extension(const FgAbGroup& sub, const FgAbGroup& quot,
                                   unsigned long candidate_bound = 64);

/// Iterated extensions, pieces listed from the deepest filtration step outward.
ExtensionReport assemble_filtration(const std::vector<FgAbGroup>& pieces,
                                    unsigned long candidate_bound = 64);

/// Splits the cyclic Pimsner-Voiculescu six-term sequence defined by the two
/// "minus identity" maps into the extensions
/// 0 -> coker(a_q) -> K_q -> ker(a_{q+1}) -> 0, one report per parity.
std::pair<ExtensionReport, ExtensionReport> six_term_solve(const GroupHom& a0,
                                                           const GroupHom& a1);

}  // namespace pvss
