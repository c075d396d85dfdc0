#include "stratal/derived.hpp"

#include <algorithm>
#include <functional>

namespace stratal {

namespace {

/// Chain families for the bar construction over (X, U): for every ambient x,
/// the strict p-chains inside U cap U_x, in name-lexicographic order.
struct BarChains {
    Poset ambient;
    Poset u_poset;
    std::vector<int> u_index;                                // ambient -> U index or -1
    std::vector<std::vector<std::vector<std::vector<int>>>> chains;  // [x][p]
    int max_p = 0;
};

BarChains make_bar_chains(const Poset& ambient, const Subspace& u) {
    BarChains bc;
    bc.ambient = ambient;
    bc.u_poset = induced_subposet(ambient, u.members);
    bc.u_index.assign(ambient.size(), -1);
    for (int i = 0; i < bc.u_poset.size(); ++i)
        bc.u_index[ambient.index(bc.u_poset.name(i))] = i;
    bc.max_p = std::max(0, ambient.height(u.members));
    bc.chains.resize(ambient.size());
    for (int x = 0; x < ambient.size(); ++x) {
        std::vector<int> vx;
        for (int y : u.members)
            if (ambient.leq(x, y)) vx.push_back(y);
        bc.chains[x].resize(bc.max_p + 1);
        for (int p = 0; p <= bc.max_p; ++p) bc.chains[x][p] = ambient.strict_chains(vx, p);
    }
    return bc;
}

int chain_position(const std::vector<std::vector<int>>& list, const std::vector<int>& chain) {
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == chain) return static_cast<int>(i);
    return -1;
}

struct BlockRef {
    int offset = 0;
    int dim = 0;
};

/// Layout of the bar stalk at x in total degree n for a given input complex:
/// blocks keyed by (p, chain index), in (p, chain) order.
struct StalkLayout {
    int total = 0;
    std::map<std::pair<int, int>, BlockRef> block;
};

StalkLayout layout(const BarChains& bc, const SheafComplex& c_on_u, int x, int n) {
    StalkLayout out;
    for (int p = 0; p <= bc.max_p; ++p) {
        int q = n - p;
        Sheaf term = c_on_u.term(q);
        if (term.is_zero_sheaf()) continue;
        const auto& chains = bc.chains[x][p];
        for (size_t ci = 0; ci < chains.size(); ++ci) {
            int top = bc.u_index[chains[ci].back()];
            int d = term.stalk[top];
            if (d == 0) continue;
            out.block[{p, static_cast<int>(ci)}] = BlockRef{out.total, d};
            out.total += d;
        }
    }
    return out;
}

void copy_block(Matrix& dst, int r0, int c0, const Matrix& m, const Rational& sign) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            dst.at(r0 + r, c0 + c) = dst.at(r0 + r, c0 + c) + sign * m.at(r, c);
}

}  // namespace

SheafComplex derived_pushforward_open(const Poset& ambient, const Subspace& u,
                                      const SheafComplex& c_on_u) {
    BarChains bc = make_bar_chains(ambient, u);
    SheafComplex out(ambient);
    if (c_on_u.is_zero_complex() || u.members.empty()) return out;
    int lo = c_on_u.min_degree(), hi = c_on_u.max_degree() + bc.max_p;

    std::map<std::pair<int, int>, StalkLayout> layouts;  // (x, n)
    for (int x = 0; x < ambient.size(); ++x)
        for (int n = lo; n <= hi; ++n) layouts[{x, n}] = layout(bc, c_on_u, x, n);

    for (int n = lo; n <= hi; ++n) {
        std::vector<int> stalks(ambient.size());
        for (int x = 0; x < ambient.size(); ++x) stalks[x] = layouts[{x, n}].total;
        Sheaf term(ambient, std::move(stalks));
        for (auto [a, b] : ambient.cover_pairs()) {
            const StalkLayout& la = layouts[{a, n}];
            const StalkLayout& lb = layouts[{b, n}];
            Matrix m(lb.total, la.total);
            for (const auto& [key, tgt] : lb.block) {
                auto [p, ci_b] = key;
                int ci_a = chain_position(bc.chains[a][p], bc.chains[b][p][ci_b]);
                const BlockRef& src = la.block.at({p, ci_a});
                copy_block(m, tgt.offset, src.offset, Matrix::identity(tgt.dim), Rational(1));
            }
            term.rest[{a, b}] = std::move(m);
        }
        out.set_term(n, std::move(term));
    }

    for (int n = lo; n < hi; ++n) {
        SheafMorphism d(out.term(n), out.term(n + 1));
        for (int x = 0; x < ambient.size(); ++x) {
            const StalkLayout& ln = layouts[{x, n}];
            const StalkLayout& ln1 = layouts[{x, n + 1}];
            Matrix m(ln1.total, ln.total);
            for (const auto& [key, tgt] : ln1.block) {
                auto [p, ci] = key;
                const std::vector<int>& chain = bc.chains[x][p][ci];
                int q = n + 1 - p;
                // faces from bar degree p-1 (same inner degree q)
                if (p >= 1) {
                    for (int i = 0; i <= p; ++i) {
                        std::vector<int> face = chain;
                        face.erase(face.begin() + i);
                        int fci = chain_position(bc.chains[x][p - 1], face);
                        auto it = ln.block.find({p - 1, fci});
                        if (it == ln.block.end()) continue;
                        Rational sign((i % 2 == 0) ? 1 : -1);
                        if (i < p) {
                            copy_block(m, tgt.offset, it->second.offset,
                                       Matrix::identity(tgt.dim), sign);
                        } else {
                            // last face restricts the coefficient
                            Matrix r = c_on_u.term(q).rest_le(bc.u_index[chain[p - 1]],
                                                              bc.u_index[chain[p]]);
                            copy_block(m, tgt.offset, it->second.offset, r, sign);
                        }
                    }
                }
                // inner differential from (p, q-1), sign (-1)^p
                auto it = ln.block.find({p, ci});
                if (it != ln.block.end()) {
                    Matrix dc = c_on_u.diff(q - 1).at(bc.u_index[chain.back()]);
                    copy_block(m, tgt.offset, it->second.offset, dc,
                               Rational((p % 2 == 0) ? 1 : -1));
                }
            }
            d.comp[x] = std::move(m);
        }
        out.set_diff(n, std::move(d));
    }
    out.prune();
    return out;
}

ChainMap derived_pushforward_open_map(const Poset& ambient, const Subspace& u,
                                      const ChainMap& f_on_u) {
    BarChains bc = make_bar_chains(ambient, u);
    SheafComplex src = derived_pushforward_open(ambient, u, f_on_u.source);
    SheafComplex tgt = derived_pushforward_open(ambient, u, f_on_u.target);
    ChainMap out(src, tgt);
    int lo = std::min(src.min_degree(), tgt.min_degree());
    int hi = std::max(src.max_degree(), tgt.max_degree());
    for (int n = lo; n <= hi; ++n) {
        SheafMorphism comp(src.term(n), tgt.term(n));
        for (int x = 0; x < ambient.size(); ++x) {
            StalkLayout ls = layout(bc, f_on_u.source, x, n);
            StalkLayout lt = layout(bc, f_on_u.target, x, n);
            Matrix m(lt.total, ls.total);
            for (const auto& [key, tb] : lt.block) {
                auto it = ls.block.find(key);
                if (it == ls.block.end()) continue;
                auto [p, ci] = key;
                int top = bc.u_index[bc.chains[x][p][ci].back()];
                copy_block(m, tb.offset, it->second.offset, f_on_u.comp(n - p).at(top),
                           Rational(1));
            }
            comp.comp[x] = std::move(m);
        }
        out.set_comp(n, std::move(comp));
    }
    return out;
}

namespace {

/// Shared by the unit and the augmentation: the degree-n component into the
/// bar stalk hits each 0-chain (y) through the coefficient restriction map.
Matrix unit_component(const BarChains& bc, const SheafComplex& c_on_u, const Sheaf& source_term,
                      int source_point_in_source_space, int x, int n,
                      const std::function<Matrix(int target_u_point)>& rest_to) {
    StalkLayout lay = layout(bc, c_on_u, x, n);
    Matrix m(lay.total, source_term.stalk[source_point_in_source_space]);
    for (const auto& [key, blk] : lay.block) {
        auto [p, ci] = key;
        if (p != 0) continue;
        int y = bc.chains[x][0][ci][0];
        copy_block(m, blk.offset, 0, rest_to(y), Rational(1));
    }
    return m;
}

}  // namespace

ChainMap adjunction_unit(const Poset& ambient, const Subspace& u, const SheafComplex& c_on_x) {
    SheafComplex restricted = restrict_complex(c_on_x, u);
    SheafComplex pushed = derived_pushforward_open(ambient, u, restricted);
    BarChains bc = make_bar_chains(ambient, u);
    ChainMap out(c_on_x, pushed);
    for (int n = c_on_x.min_degree(); n <= c_on_x.max_degree(); ++n) {
        Sheaf term = c_on_x.term(n);
        SheafMorphism comp(term, pushed.term(n));
        for (int x = 0; x < ambient.size(); ++x) {
            comp.comp[x] = unit_component(bc, restricted, term, x, x, n, [&](int y) {
                return term.rest_le(x, y);
            });
        }
        out.set_comp(n, std::move(comp));
    }
    return out;
}

ChainMap bar_augmentation(const Poset& ambient, const Subspace& u, const SheafComplex& c_on_u) {
    SheafComplex pushed = derived_pushforward_open(ambient, u, c_on_u);
    SheafComplex target = restrict_complex(pushed, u);
    BarChains bc = make_bar_chains(ambient, u);
    ChainMap out(c_on_u, target);
    for (int n = c_on_u.min_degree(); n <= c_on_u.max_degree(); ++n) {
        Sheaf term = c_on_u.term(n);
        SheafMorphism comp(term, target.term(n));
        for (int i = 0; i < bc.u_poset.size(); ++i) {
            int x = ambient.index(bc.u_poset.name(i));
            comp.comp[i] = unit_component(bc, c_on_u, term, i, x, n, [&](int y) {
                return term.rest_le(i, bc.u_index[y]);
            });
        }
        out.set_comp(n, std::move(comp));
    }
    return out;
}

GammaOpen gamma_open(const Poset& ambient, const Subspace& l, const SheafComplex& c_on_x) {
    GammaOpen out;
    out.unit = adjunction_unit(ambient, l, c_on_x);
    out.complex = out.unit.target;
    return out;
}

ChainMap gamma_open_map(const Poset& ambient, const Subspace& l, const ChainMap& f_on_x) {
    return derived_pushforward_open_map(ambient, l, restrict_chain_map(f_on_x, l));
}

GammaClosed gamma_closed(const Poset& ambient, const Subspace& k, const SheafComplex& c_on_x) {
    if (k.kind != SubsetKind::closed && !ambient.is_down_set(k.members))
        throw input_error("gamma_closed requires a closed subspace");
    Subspace l = Subspace::open_set(ambient, complement(ambient, k.members));
    GammaClosed out;
    GammaOpen go = gamma_open(ambient, l, c_on_x);
    out.gamma_l = go.complex;
    out.unit = go.unit;
    Cone c = cone(out.unit);
    out.gamma_k = shift(c.cone, -1);
    out.to_ambient = shift(c.to_shifted_source, -1);  // lands in C itself
    out.connecting = c.from_target;                   // gamma_l -> shift(gamma_k, 1)
    return out;
}

ChainMap gamma_closed_map(const Poset& ambient, const Subspace& k, const ChainMap& f_on_x) {
    Subspace l = Subspace::open_set(ambient, complement(ambient, k.members));
    GammaOpen src = gamma_open(ambient, l, f_on_x.source);
    GammaOpen tgt = gamma_open(ambient, l, f_on_x.target);
    ChainMap lmap = gamma_open_map(ambient, l, f_on_x);
    // The unit square commutes strictly, so the cone map is canonical.
    Cone cs = cone(src.unit);
    Cone ct = cone(tgt.unit);
    return shift(cone_map(cs, ct, f_on_x, lmap), -1);
}

int VectComplex::dim(int k) const {
    auto it = dims.find(k);
    return it == dims.end() ? 0 : it->second;
}

Matrix VectComplex::diff(int k) const {
    auto it = d.find(k);
    return it == d.end() ? Matrix::zero(dim(k + 1), dim(k)) : it->second;
}

std::map<int, int> VectComplex::cohomology_dims() const {
    std::map<int, int> out;
    if (dims.empty()) return out;
    int lo = dims.begin()->first, hi = dims.rbegin()->first;
    for (int k = lo; k <= hi; ++k) {
        int z = dim(k) - rank(diff(k));
        int b = rank(diff(k - 1));
        if (z - b != 0) out[k] = z - b;
    }
    return out;
}

VectComplex global_sections_complex(const SheafComplex& c) {
    // Bar complex over the full poset; identical block rules with the whole
    // space as the chain domain.
    const Poset& p = c.space;
    std::vector<int> all;
    for (int i = 0; i < p.size(); ++i) all.push_back(i);
    int max_p = std::max(0, p.height(all));
    std::vector<std::vector<std::vector<int>>> chains(max_p + 1);
    for (int k = 0; k <= max_p; ++k) chains[k] = p.strict_chains(all, k);

    VectComplex out;
    if (c.is_zero_complex()) return out;
    int lo = c.min_degree(), hi = c.max_degree() + max_p;

    struct Lay {
        int total = 0;
        std::map<std::pair<int, int>, BlockRef> block;
    };
    std::map<int, Lay> lays;
    for (int n = lo; n <= hi; ++n) {
        Lay lay;
        for (int bp = 0; bp <= max_p; ++bp) {
            int q = n - bp;
            Sheaf term = c.term(q);
            if (term.is_zero_sheaf()) continue;
            for (size_t ci = 0; ci < chains[bp].size(); ++ci) {
                int dtop = term.stalk[chains[bp][ci].back()];
                if (dtop == 0) continue;
                lay.block[{bp, static_cast<int>(ci)}] = BlockRef{lay.total, dtop};
                lay.total += dtop;
            }
        }
        lays[n] = std::move(lay);
        if (lays[n].total) out.dims[n] = lays[n].total;
    }
    for (int n = lo; n < hi; ++n) {
        Matrix m(lays[n + 1].total, lays[n].total);
        for (const auto& [key, tgt] : lays[n + 1].block) {
            auto [bp, ci] = key;
            const std::vector<int>& chain = chains[bp][ci];
            int q = n + 1 - bp;
            if (bp >= 1) {
                for (int i = 0; i <= bp; ++i) {
                    std::vector<int> face = chain;
                    face.erase(face.begin() + i);
                    int fci = chain_position(chains[bp - 1], face);
                    auto it = lays[n].block.find({bp - 1, fci});
                    if (it == lays[n].block.end()) continue;
                    Rational sign((i % 2 == 0) ? 1 : -1);
                    if (i < bp)
                        copy_block(m, tgt.offset, it->second.offset, Matrix::identity(tgt.dim),
                                   sign);
                    else
                        copy_block(m, tgt.offset, it->second.offset,
                                   c.term(q).rest_le(chain[bp - 1], chain[bp]), sign);
                }
            }
            auto it = lays[n].block.find({bp, ci});
            if (it != lays[n].block.end())
                copy_block(m, tgt.offset, it->second.offset, c.diff(q - 1).at(chain.back()),
                           Rational((bp % 2 == 0) ? 1 : -1));
        }
        if (lays[n].total || lays[n + 1].total) out.d[n] = std::move(m);
    }
    return out;
}

}  // namespace stratal
