#include "pvss/specseq.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace pvss {

namespace {

std::size_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 0; i < k; ++i) r = r * static_cast<std::size_t>(n - i) / (i + 1);
    return r;
}

}  // namespace

TupleIndex::TupleIndex(int n_, std::vector<int> entries_) : n(n_), entries(std::move(entries_)) {
    int prev = 0;
    for (int e : entries) {
        if (e <= prev || e > n)
            throw std::invalid_argument("TupleIndex: entries must be strictly increasing in 1..n");
        prev = e;
    }
}

std::vector<TupleIndex> all_tuples(int k, int n) {
    std::vector<TupleIndex> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) {
            out.emplace_back(n, cur);
            return;
        }
        for (int v = start; v <= n - (k - pos - 1); ++v) {
            cur[pos] = v;
            rec(pos + 1, v + 1);
        }
    };
    rec(0, 1);
    return out;
}

std::size_t lex_index(const TupleIndex& mu) {
    // rank of mu in the lexicographic enumeration of T(k,n)
    std::size_t idx = 0;
    int k = static_cast<int>(mu.size());
    int prev = 0;
    for (int pos = 0; pos < k; ++pos) {
        for (int v = prev + 1; v < mu.entries[pos]; ++v)
            idx += binomial(mu.n - v, k - pos - 1);
        prev = mu.entries[pos];
    }
    return idx;
}

TupleIndex complement(const TupleIndex& mu) {
    std::vector<int> out;
    std::size_t i = 0;
    for (int v = 1; v <= mu.n; ++v) {
        if (i < mu.entries.size() && mu.entries[i] == v)
            ++i;
        else
            out.push_back(v);
    }
    return TupleIndex(mu.n, out);
}

int wedge_sign(const TupleIndex& mu, const TupleIndex& lam) {
    if (mu.n != lam.n) throw std::invalid_argument("wedge_sign: ambient ranks differ");
    for (int a : mu.entries)
        for (int b : lam.entries)
            if (a == b) return 0;
    // count transpositions needed to sort the concatenation
    int inversions = 0;
    for (int a : mu.entries)
        for (int b : lam.entries)
            if (a > b) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

TupleIndex merge_tuples(const TupleIndex& mu, const TupleIndex& lam) {
    std::vector<int> out = mu.entries;
    out.insert(out.end(), lam.entries.begin(), lam.entries.end());
    std::sort(out.begin(), out.end());
    return TupleIndex(mu.n, out);
}

void validate_spec(const ActionSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("spec: n must be at least 1");
    if (static_cast<int>(spec.action0.size()) != spec.n ||
        static_cast<int>(spec.action1.size()) != spec.n)
        throw std::invalid_argument("spec: need exactly n action homs per K-group");
    for (int q = 0; q < 2; ++q) {
        const FgAbGroup& kq = spec.k_group(q);
        for (const GroupHom& a : spec.action(q)) {
            if (a.source().gens() != kq.gens() || a.target().gens() != kq.gens())
                throw std::invalid_argument("spec: action hom is not an endomorphism of K" +
                                            std::to_string(q));
            if (!check_well_defined(a))
                throw std::invalid_argument("spec: ill-defined action hom on K" +
                                            std::to_string(q));
        }
        const auto& as = spec.action(q);
        for (std::size_t i = 0; i < as.size(); ++i)
            for (std::size_t j = i + 1; j < as.size(); ++j) {
                GroupHom diff(kq, kq, as[i].matrix() * as[j].matrix() -
                                          as[j].matrix() * as[i].matrix());
                if (!diff.is_zero_hom())
                    throw std::invalid_argument("spec: action homs do not commute on K" +
                                                std::to_string(q));
            }
        if (spec.k_trivial)
            for (const GroupHom& a : as) {
                GroupHom diff(kq, kq, a.matrix() - IntMatrix::identity(kq.gens()));
                if (!diff.is_zero_hom())
                    throw std::invalid_argument(
                        "spec: k_trivial flag set but an action is not the identity on K" +
                        std::to_string(q));
            }
    }
    if (spec.d2data) {
        if (spec.d2data->is_pairwise()) {
            if (!spec.k_trivial)
                throw std::invalid_argument("spec: pairwise d2 data requires the k_trivial flag");
            for (const auto& [key, d] : std::get<D2Data::PairwiseKTrivial>(spec.d2data->data).deltas) {
                if (key.i < 1 || key.j <= key.i || key.j > spec.n)
                    throw std::invalid_argument("spec: bad pair index in d2 data");
                if (d.first.matrix().rows() != spec.k1.gens() ||
                    d.first.matrix().cols() != spec.k0.gens() ||
                    d.second.matrix().rows() != spec.k0.gens() ||
                    d.second.matrix().cols() != spec.k1.gens())
                    throw std::invalid_argument("spec: d2 data shape mismatch");
                if (!check_well_defined(d.first) || !check_well_defined(d.second))
                    throw std::invalid_argument("spec: ill-defined d2 hom");
            }
        } else {
            if (spec.n != 2)
                throw std::invalid_argument("spec: ambient d2 data is only defined for n = 2");
            const auto& d = std::get<D2Data::AmbientN2>(spec.d2data->data);
            if (d.delta0.matrix().rows() != spec.k1.gens() ||
                d.delta0.matrix().cols() != spec.k0.gens() ||
                d.delta1.matrix().rows() != spec.k0.gens() ||
                d.delta1.matrix().cols() != spec.k1.gens())
                throw std::invalid_argument("spec: d2 data shape mismatch");
            if (!check_well_defined(d.delta0) || !check_well_defined(d.delta1))
                throw std::invalid_argument("spec: ill-defined d2 hom");
        }
    }
}

const PageCell* BigradedPage::cell(int p, int q) const {
    auto it = cells.find({p, ((q % 2) + 2) % 2});
    return it == cells.end() ? nullptr : &it->second;
}

const FgAbGroup& BigradedPage::presented(int p, int q) const {
    static const FgAbGroup trivial = FgAbGroup::trivial();
    const PageCell* c = cell(p, q);
    return c ? c->sq.presented : trivial;
}

const GroupHom* BigradedPage::differential(int p, int q) const {
    auto it = differentials.find({p, ((q % 2) + 2) % 2});
    return it == differentials.end() ? nullptr : &it->second;
}

namespace {

// block differential of the Pimsner-Voiculescu complex in degree p:
// x ⊗ e ↦ Σ_k d_k(x) ⊗ (e ∧ e_k), with d_k the k-th "minus identity" matrix
IntMatrix pv_block(int n, int p, std::size_t g, const std::vector<IntMatrix>& d) {
    auto src = all_tuples(p, n);
    auto tgt = all_tuples(p + 1, n);
    IntMatrix out(tgt.size() * g, src.size() * g);
    for (std::size_t a = 0; a < src.size(); ++a) {
        for (int k = 1; k <= n; ++k) {
            TupleIndex ek(n, {k});
            int sign = wedge_sign(src[a], ek);
            if (sign == 0) continue;
            std::size_t b = lex_index(merge_tuples(src[a], ek));
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j)
                    out.at(b * g + i, a * g + j) += sign * d[k - 1].at(i, j);
        }
    }
    return out;
}

// cohomological Koszul differential: position-based signs instead of
// wedge counts; an independent route to the same cohomology
IntMatrix koszul_block(int n, int p, std::size_t g, const std::vector<IntMatrix>& d) {
    auto src = all_tuples(p, n);
    auto tgt = all_tuples(p + 1, n);
    IntMatrix out(tgt.size() * g, src.size() * g);
    for (std::size_t b = 0; b < tgt.size(); ++b) {
        const TupleIndex& nu = tgt[b];
        for (std::size_t pos = 0; pos < nu.size(); ++pos) {
            std::vector<int> rest = nu.entries;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
            std::size_t a = lex_index(TupleIndex(n, rest));
            int sign = (pos + 1) % 2 == 0 ? 1 : -1;  // (-1)^k, k the 1-based position
            const IntMatrix& dk = d[static_cast<std::size_t>(nu.entries[pos]) - 1];
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j)
                    out.at(b * g + i, a * g + j) += sign * dk.at(i, j);
        }
    }
    return out;
}

std::vector<IntMatrix> minus_identity(const std::vector<GroupHom>& action, std::size_t g) {
    std::vector<IntMatrix> out;
    out.reserve(action.size());
    for (const GroupHom& a : action) out.push_back(a.matrix() - IntMatrix::identity(g));
    return out;
}

FgAbGroup cell_ambient(const FgAbGroup& kq, std::size_t copies) {
    std::vector<FgAbGroup> gs(copies, kq);
    return direct_sum(gs).group;
}

PageCell full_cell(const FgAbGroup& ambient) {
    Subgroup z{ambient, IntMatrix::identity(ambient.gens())};
    Subgroup b{ambient, IntMatrix(ambient.gens(), 0)};
    return {ambient, subquotient(z, b)};
}

std::vector<FgAbGroup> complex_cohomology(int n, const FgAbGroup& m,
                                          const std::vector<GroupHom>& action, bool koszul) {
    std::size_t g = m.gens();
    std::vector<IntMatrix> d = minus_identity(action, g);
    std::map<int, FgAbGroup> groups;
    std::map<int, GroupHom> diffs;
    for (int p = 0; p <= n; ++p) groups[p] = cell_ambient(m, binomial(n, p));
    for (int p = 0; p < n; ++p) {
        IntMatrix mat = koszul ? koszul_block(n, p, g, d) : pv_block(n, p, g, d);
        diffs.emplace(p, GroupHom(groups[p], groups[p + 1], mat));
    }
    CochainComplex c(std::move(groups), std::move(diffs));
    std::vector<FgAbGroup> out;
    for (int p = 0; p <= n; ++p) out.push_back(cohomology_at(c, p));
    return out;
}

}  // namespace

BigradedPage build_e1(const ActionSpec& spec) {
    validate_spec(spec);
    BigradedPage page;
    page.k = 1;
    page.n = spec.n;
    for (int p = 0; p <= spec.n; ++p)
        for (int q = 0; q < 2; ++q) {
            FgAbGroup ambient = cell_ambient(spec.k_group(q), binomial(spec.n, p));
            page.cells[{p, q}] = full_cell(ambient);
        }
    for (int p = 0; p < spec.n; ++p)
        for (int q = 0; q < 2; ++q) {
            std::size_t g = spec.k_group(q).gens();
            IntMatrix mat = pv_block(spec.n, p, g, minus_identity(spec.action(q), g));
            page.differentials.emplace(
                std::make_pair(p, q),
                GroupHom::checked(page.presented(p, q), page.presented(p + 1, q), mat));
        }
    return page;
}

std::vector<FgAbGroup> group_cohomology(int n, const FgAbGroup& m,
                                        const std::vector<GroupHom>& action) {
    return complex_cohomology(n, m, action, false);
}

std::vector<FgAbGroup> koszul_cohomology(int n, const FgAbGroup& m,
                                         const std::vector<GroupHom>& action) {
    return complex_cohomology(n, m, action, true);
}

BigradedPage next_page(const BigradedPage& page) {
    BigradedPage out;
    out.k = page.k + 1;
    out.n = page.n;
    for (const auto& [key, c] : page.cells) {
        auto [p, q] = key;
        const GroupHom* d_out = page.differential(p, q);
        IntMatrix surviving;
        if (d_out)
            surviving = kernel_lattice_modulo(d_out->matrix(), d_out->target().relations());
        else
            surviving = IntMatrix::identity(c.sq.presented.gens());
        IntMatrix z_new = (c.sq.cycles * surviving).hcat(c.sq.boundaries);

        IntMatrix b_new = c.sq.boundaries;
        int ps = p - page.k;
        int qs = ((q + page.k - 1) % 2 + 2) % 2;
        const GroupHom* d_in = page.differential(ps, qs);
        if (d_in && d_in->matrix().cols() > 0)
            b_new = b_new.hcat(c.sq.cycles * d_in->matrix());

        out.cells[key] = {c.ambient,
                          subquotient(Subgroup{c.ambient, z_new}, Subgroup{c.ambient, b_new})};
    }
    return out;
}

namespace {

bool d2_possibly_nonzero(const BigradedPage& page2) {
    for (const auto& [key, c] : page2.cells) {
        auto [p, q] = key;
        if (c.sq.presented.is_trivial()) continue;
        const PageCell* tgt = page2.cell(p + 2, q - 1);
        if (tgt && !tgt->sq.presented.is_trivial()) return true;
    }
    return false;
}

}  // namespace

void build_d2(const ActionSpec& spec, BigradedPage& page2, std::vector<std::string>& warnings) {
    if (page2.k != 2) throw std::invalid_argument("build_d2: expects a page 2");
    if (!d2_possibly_nonzero(page2)) return;
    if (!spec.d2data)
        throw InsufficientDataError(
            "second page differential data required: E2 has nonzero d2 source/target pairs");

    auto attach = [&](int p, int q, const IntMatrix& ambient_matrix) {
        const PageCell* src = page2.cell(p, q);
        const PageCell* tgt = page2.cell(p + 2, q - 1);
        if (!src || !tgt) return;
        if (src->sq.presented.is_trivial() || tgt->sq.presented.is_trivial()) return;
        GroupHom ambient(src->ambient, tgt->ambient, ambient_matrix);
        page2.differentials.emplace(std::make_pair(p, ((q % 2) + 2) % 2),
                                    induced_hom(ambient, src->sq, tgt->sq));
    };

    if (spec.d2data->is_pairwise()) {
        const auto& pw = std::get<D2Data::PairwiseKTrivial>(spec.d2data->data);
        for (int q = 0; q < 2; ++q) {
            const FgAbGroup& kq = spec.k_group(q);
            const FgAbGroup& kq1 = spec.k_group(q - 1);
            for (int p = 0; p + 2 <= spec.n; ++p) {
                auto src = all_tuples(p, spec.n);
                auto tgt = all_tuples(p + 2, spec.n);
                IntMatrix mat(tgt.size() * kq1.gens(), src.size() * kq.gens());
                for (std::size_t a = 0; a < src.size(); ++a)
                    for (const auto& [key, d] : pw.deltas) {
                        TupleIndex mu(spec.n, {key.i, key.j});
                        int sign = wedge_sign(src[a], mu);
                        if (sign == 0) continue;
                        std::size_t b = lex_index(merge_tuples(src[a], mu));
                        const IntMatrix& dm = (q % 2 == 0 ? d.first : d.second).matrix();
                        for (std::size_t i = 0; i < kq1.gens(); ++i)
                            for (std::size_t j = 0; j < kq.gens(); ++j)
                                mat.at(b * kq1.gens() + i, a * kq.gens() + j) +=
                                    sign * dm.at(i, j);
                    }
                attach(p, q, mat);
            }
        }
        if (spec.pointwise_inner) {
            for (const auto& [key, d] : pw.deltas)
                for (int q = 0; q < 2; ++q) {
                    const GroupHom& dq = q % 2 == 0 ? d.first : d.second;
                    const GroupHom& dq1 = q % 2 == 0 ? d.second : d.first;
                    if (!compose(dq1, dq).is_zero_hom()) {
                        std::ostringstream os;
                        os << "pointwise-inner d2 data for pair (" << key.i << "," << key.j
                           << ") violates the vanishing composite rule at q=" << q;
                        if (spec.strict) throw std::invalid_argument(os.str());
                        warnings.push_back(os.str());
                    }
                }
        }
    } else {
        const auto& am = std::get<D2Data::AmbientN2>(spec.d2data->data);
        attach(0, 0, am.delta0.matrix());
        attach(0, 1, am.delta1.matrix());
        if (spec.pointwise_inner) {
            for (int q = 0; q < 2; ++q) {
                const GroupHom& dq = q == 0 ? am.delta0 : am.delta1;
                const GroupHom& dq1 = q == 0 ? am.delta1 : am.delta0;
                IntMatrix comp = dq1.matrix() * dq.matrix();
                const PageCell* src = page2.cell(0, q);
                const PageCell* proj = page2.cell(2, q);
                bool ok = true;
                if (src && proj) {
                    IntMatrix mod = proj->sq.boundaries.hcat(proj->ambient.relations());
                    for (std::size_t j = 0; j < src->sq.cycles.cols(); ++j) {
                        IntVec v = comp.apply(src->sq.cycles.column_vec(j));
                        if (!solve_integer(mod, v)) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (!ok) {
                    std::string msg =
                        "pointwise-inner d2 data violates the vanishing composite rule at q=" +
                        std::to_string(q);
                    if (spec.strict) throw std::invalid_argument(msg);
                    warnings.push_back(msg);
                }
            }
        }
    }
}

RunResult run_pages(const ActionSpec& spec) {
    validate_spec(spec);
    RunResult res;
    res.pages.push_back(build_e1(spec));
    for (int k = 2; k <= spec.n + 1; ++k) {
        BigradedPage pg = next_page(res.pages.back());
        if (k == 2) {
            build_d2(spec, pg, res.warnings);
        } else if (k <= spec.n) {
            // no general formula for d_k, k >= 3; demand the vanishing flag
            bool possible = false;
            for (const auto& [key, c] : pg.cells) {
                auto [p, q] = key;
                if (c.sq.presented.is_trivial()) continue;
                const PageCell* tgt = pg.cell(p + k, q - k + 1);
                if (tgt && !tgt->sq.presented.is_trivial()) possible = true;
            }
            if (possible) {
                if (!spec.assume_higher_vanish)
                    throw InsufficientDataError(
                        "page " + std::to_string(k) +
                        " may carry a nonzero differential; set assume_higher_vanish to proceed");
                res.warnings.push_back("conditional on vanishing higher differentials (d" +
                                       std::to_string(k) + ")");
            }
        }
        res.pages.push_back(std::move(pg));
    }
    return res;
}

CrossedResult crossed_product_k(const ActionSpec& spec) {
    RunResult run = run_pages(spec);
    const BigradedPage& einf = run.e_infinity();
    CrossedResult out;
    out.warnings = run.warnings;
    for (int j = 0; j < 2; ++j) {
        std::vector<FgAbGroup> pieces;
        for (int p = spec.n; p >= 0; --p) {
            int q = ((j + spec.n - p) % 2 + 2) % 2;
            const FgAbGroup& cell = einf.presented(p, q);
            pieces.push_back(FgAbGroup::from_invariants(cell.rank(), cell.torsion()));
        }
        (j == 0 ? out.k0 : out.k1) = assemble_filtration(pieces);
    }
    return out;
}

CrossedResult iterated_pv(const ActionSpec& spec) {
    validate_spec(spec);
    if (spec.n != 2 || !spec.k_trivial)
        throw std::invalid_argument("iterated_pv: requires an n = 2 spec with k_trivial actions");
    if (!spec.d2data || spec.d2data->is_pairwise())
        throw std::invalid_argument("iterated_pv: requires ambient n = 2 d2 data");
    const auto& am = std::get<D2Data::AmbientN2>(spec.d2data->data);

    // one PV step: K_i of the first crossed product is K_i ⊕ K_{i+1}, and the
    // extended automorphism acts with the strictly upper block δ
    auto stacked = [&](const FgAbGroup& a, const FgAbGroup& b, const IntMatrix& delta) {
        FgAbGroup sum = direct_sum({a, b}).group;
        IntMatrix m(sum.gens(), sum.gens());
        for (std::size_t i = 0; i < a.gens(); ++i)
            for (std::size_t j = 0; j < b.gens(); ++j) m.at(i, a.gens() + j) = delta.at(i, j);
        return GroupHom(sum, sum, m);
    };
    GroupHom a0 = stacked(spec.k0, spec.k1, am.delta1.matrix());
    GroupHom a1 = stacked(spec.k1, spec.k0, am.delta0.matrix());
    auto [k0, k1] = six_term_solve(a0, a1);
    return {k0, k1, {}};
}

long euler_characteristic(const BigradedPage& page, int parity) {
    // every differential raises the total degree by one, so this signed sum
    // over the two diagonal parity classes is a page invariant
    long sum = 0;
    for (int p = 0; p <= page.n; ++p)
        for (int q = 0; q < 2; ++q) {
            long r = static_cast<long>(page.presented(p, q).rank());
            sum += ((p + q) % 2 == parity % 2) ? r : -r;
        }
    return sum;
}

long row_euler(const BigradedPage& page, int q) {
    long sum = 0;
    for (int p = 0; p <= page.n; ++p)
        sum += (p % 2 == 0 ? 1 : -1) * static_cast<long>(page.presented(p, q).rank());
    return sum;
}

PageMorphism induced_page_morphism(const GroupHom& f0, const GroupHom& f1,
                                   const ActionSpec& src, const ActionSpec& tgt) {
    validate_spec(src);
    validate_spec(tgt);
    if (src.n != tgt.n) throw std::invalid_argument("induced_page_morphism: ranks differ");
    for (int q = 0; q < 2; ++q) {
        const GroupHom& f = q == 0 ? f0 : f1;
        if (f.source().gens() != src.k_group(q).gens() ||
            f.target().gens() != tgt.k_group(q).gens() || !check_well_defined(f))
            throw std::invalid_argument("induced_page_morphism: bad K-group map at q=" +
                                        std::to_string(q));
        for (int i = 0; i < src.n; ++i) {
            IntMatrix lhs = f.matrix() * src.action(q)[i].matrix();
            IntMatrix rhs = tgt.action(q)[i].matrix() * f.matrix();
            GroupHom diff(src.k_group(q), tgt.k_group(q), lhs - rhs);
            if (!diff.is_zero_hom())
                throw std::invalid_argument(
                    "induced_page_morphism: maps are not equivariant at q=" + std::to_string(q) +
                    ", generator " + std::to_string(i + 1));
        }
    }

    BigradedPage se1 = build_e1(src), te1 = build_e1(tgt);
    BigradedPage se2 = next_page(se1), te2 = next_page(te1);

    PageMorphism out;
    std::map<std::pair<int, int>, GroupHom> ambient_maps;
    for (int p = 0; p <= src.n; ++p)
        for (int q = 0; q < 2; ++q) {
            const GroupHom& f = q == 0 ? f0 : f1;
            std::size_t copies = binomial(src.n, p);
            std::size_t sg = src.k_group(q).gens(), tg = tgt.k_group(q).gens();
            IntMatrix block(copies * tg, copies * sg);
            for (std::size_t c = 0; c < copies; ++c)
                for (std::size_t i = 0; i < tg; ++i)
                    for (std::size_t j = 0; j < sg; ++j)
                        block.at(c * tg + i, c * sg + j) = f.matrix().at(i, j);
            GroupHom amb(se1.cell(p, q)->ambient, te1.cell(p, q)->ambient, block);
            ambient_maps.emplace(std::make_pair(p, q), amb);
            out.e1_maps.emplace(std::make_pair(p, q),
                                GroupHom::checked(se1.presented(p, q), te1.presented(p, q),
                                                  block));
        }
    // compatibility with d1
    for (int p = 0; p < src.n; ++p)
        for (int q = 0; q < 2; ++q) {
            GroupHom lhs = compose(te1.differentials.at({p, q}), out.e1_maps.at({p, q}));
            GroupHom rhs = compose(out.e1_maps.at({p + 1, q}), se1.differentials.at({p, q}));
            GroupHom diff(lhs.source(), lhs.target(), lhs.matrix() - rhs.matrix());
            if (!diff.is_zero_hom())
                throw std::domain_error("induced_page_morphism: E1 map does not intertwine d1");
        }
    for (int p = 0; p <= src.n; ++p)
        for (int q = 0; q < 2; ++q)
            out.e2_maps.emplace(
                std::make_pair(p, q),
                induced_hom(ambient_maps.at({p, q}), se2.cell(p, q)->sq, te2.cell(p, q)->sq));
    return out;
}

}  // namespace pvss
