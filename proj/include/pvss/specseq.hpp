#pragma once

#include "pvss/homalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pvss {

/// Raised when a computation needs data the input does not provide
/// (second page differentials, vanishing assumptions for higher pages).
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Strictly increasing tuple mu = (mu_1 < ... < mu_k), 1-based, values <= n.
struct TupleIndex {
    int n = 0;
    std::vector<int> entries;

    TupleIndex() = default;
    TupleIndex(int n, std::vector<int> entries);

    std::size_t size() const { return entries.size(); }
    bool operator==(const TupleIndex&) const = default;
};

/// All of T(k,n) in lexicographic order.
std::vector<TupleIndex> all_tuples(int k, int n);

/// Position of mu in the lexicographic ordering of T(|mu|, n).
std::size_t lex_index(const TupleIndex& mu);

TupleIndex complement(const TupleIndex& mu);

/// Sign s with e_mu ∧ e_lam = s * e_(sorted merge); 0 if the tuples meet.
int wedge_sign(const TupleIndex& mu, const TupleIndex& lam);

TupleIndex merge_tuples(const TupleIndex& mu, const TupleIndex& lam);

struct PairKey {
    int i, j;  // 1-based, i < j
    auto operator<=>(const PairKey&) const = default;
};

/// Second page differential data; delta_q maps K_q into K_{q-1}.
struct D2Data {
    struct PairwiseKTrivial {
        std::map<PairKey, std::pair<GroupHom, GroupHom>> deltas;  // (q0: K0->K1, q1: K1->K0)
    };
    struct AmbientN2 {
        GroupHom delta0;  // K0 -> K1
        GroupHom delta1;  // K1 -> K0
    };
    std::variant<PairwiseKTrivial, AmbientN2> data;

    bool is_pairwise() const { return std::holds_alternative<PairwiseKTrivial>(data); }
};

struct ActionSpec {
    int n = 0;
    FgAbGroup k0, k1;
    std::vector<GroupHom> action0;  // n endomorphisms of k0
    std::vector<GroupHom> action1;  // n endomorphisms of k1
    std::optional<D2Data> d2data;
    bool k_trivial = false;
    bool pointwise_inner = false;
    bool assume_higher_vanish = false;
    bool strict = false;
    std::vector<std::string> names0, names1;

    const FgAbGroup& k_group(int q) const { return (q % 2 + 2) % 2 == 0 ? k0 : k1; }
    const std::vector<GroupHom>& action(int q) const {
        return (q % 2 + 2) % 2 == 0 ? action0 : action1;
    }
};

/// Throws std::invalid_argument naming the violated invariant.
void validate_spec(const ActionSpec& spec);

struct PageCell {
    FgAbGroup ambient;  // the E1 cell the subquotient lives in
    Subquotient sq;
};

struct BigradedPage {
    int k = 1;
    int n = 0;
    std::map<std::pair<int, int>, PageCell> cells;          // (p, q mod 2)
    std::map<std::pair<int, int>, GroupHom> differentials;  // source keyed

    const PageCell* cell(int p, int q) const;
    const FgAbGroup& presented(int p, int q) const;
    const GroupHom* differential(int p, int q) const;
};

BigradedPage build_e1(const ActionSpec& spec);

std::vector<FgAbGroup> group_cohomology(int n, const FgAbGroup& m,
                                        const std::vector<GroupHom>& action);

/// Independent route to the same cohomology via the Koszul-resolution
/// differential; cross-checks group_cohomology.
std::vector<FgAbGroup> koszul_cohomology(int n, const FgAbGroup& m,
                                         const std::vector<GroupHom>& action);

/// Cells of page k+1 from page k; new differentials are left unset (zero).
BigradedPage next_page(const BigradedPage& page);

/// Attaches d2 to a freshly computed page 2; appends validation warnings.
void build_d2(const ActionSpec& spec, BigradedPage& page2, std::vector<std::string>& warnings);

struct RunResult {
    std::vector<BigradedPage> pages;  // E1 .. E_{n+1}
    std::vector<std::string> warnings;

    const BigradedPage& e_infinity() const { return pages.back(); }
};

RunResult run_pages(const ActionSpec& spec);

struct CrossedResult {
    ExtensionReport k0, k1;
    std::vector<std::string> warnings;
};

/// K-theory of the crossed product, assembled from the E_infinity cells
/// along the convergence filtration (with the rank-n degree shift).
CrossedResult crossed_product_k(const ActionSpec& spec);

/// Alternative route for n = 2 K-trivial specs: one Pimsner-Voiculescu
/// step followed by a six-term solve for the extended automorphism.
CrossedResult iterated_pv(const ActionSpec& spec);

/// Alternating rank sum over the total-degree diagonal of fixed parity.
long euler_characteristic(const BigradedPage& page, int parity);

/// Alternating rank sum along a fixed q-row.
long row_euler(const BigradedPage& page, int q);

struct PageMorphism {
    std::map<std::pair<int, int>, GroupHom> e1_maps;
    std::map<std::pair<int, int>, GroupHom> e2_maps;
};

/// Cellwise maps of E1 and E2 induced by equivariant maps on the K-groups.
PageMorphism induced_page_morphism(const GroupHom& f0, const GroupHom& f1,
                                   const ActionSpec& src, const ActionSpec& tgt);

}  // namespace pvss
