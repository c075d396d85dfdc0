#include "stratal/sheaf.hpp"

#include <algorithm>
#include <set>

namespace stratal {

Sheaf::Sheaf(Poset space_, std::vector<int> stalk_)
    : space(std::move(space_)), stalk(std::move(stalk_)) {
    if (static_cast<int>(stalk.size()) != space.size())
        throw shape_error("stalk table size does not match poset");
    for (auto [a, b] : space.cover_pairs())
        rest[{a, b}] = Matrix::zero(stalk[b], stalk[a]);
}

Sheaf Sheaf::zero(const Poset& p) { return Sheaf(p, std::vector<int>(p.size(), 0)); }

Sheaf Sheaf::constant(const Poset& p, int dim) {
    Sheaf f(p, std::vector<int>(p.size(), dim));
    for (auto [a, b] : p.cover_pairs()) f.rest[{a, b}] = Matrix::identity(dim);
    return f;
}

Sheaf Sheaf::skyscraper(const Poset& p, const std::string& at, int dim) {
    std::vector<int> stalks(p.size(), 0);
    stalks[p.index(at)] = dim;
    return Sheaf(p, std::move(stalks));
}

int Sheaf::total_dim() const {
    int t = 0;
    for (int d : stalk) t += d;
    return t;
}

bool Sheaf::is_zero_sheaf() const { return total_dim() == 0; }

const Matrix& Sheaf::cover_map(int a, int b) const {
    auto it = rest.find({a, b});
    if (it == rest.end()) throw shape_error("no restriction map stored for this pair");
    return it->second;
}

Matrix Sheaf::rest_le(int a, int b) const {
    if (a == b) return Matrix::identity(stalk[a]);
    if (!space.less(a, b)) throw shape_error("rest_le on incomparable elements");
    if (space.covers(a, b)) return cover_map(a, b);
    // First intermediate cover step in index order; validate() certifies that
    // the choice does not matter.
    for (int m = 0; m < space.size(); ++m)
        if (space.covers(a, m) && space.leq(m, b)) return rest_le(m, b) * cover_map(a, m);
    throw shape_error("no covering path found");
}

std::optional<std::string> Sheaf::validate() const {
    for (auto [a, b] : space.cover_pairs()) {
        auto it = rest.find({a, b});
        if (it == rest.end())
            return "missing map for " + space.name(a) + "<" + space.name(b);
        if (it->second.rows() != stalk[b] || it->second.cols() != stalk[a])
            return "map shape mismatch at " + space.name(a) + "<" + space.name(b);
    }
    // Full path independence: walk upward from every base point and require
    // all incoming routes to an element to agree.
    auto order = space.topological_order();
    for (int base = 0; base < space.size(); ++base) {
        std::map<int, Matrix> reach;
        reach[base] = Matrix::identity(stalk[base]);
        for (int y : order) {
            if (!space.less(base, y)) continue;
            std::optional<Matrix> agreed;
            int first_mid = -1;
            for (int m = 0; m < space.size(); ++m) {
                if (!space.covers(m, y) || !space.leq(base, m)) continue;
                Matrix candidate = cover_map(m, y) * reach.at(m);
                if (!agreed) {
                    agreed = candidate;
                    first_mid = m;
                } else if (!(candidate == *agreed)) {
                    return "functoriality fails: paths " + space.name(base) + ".." +
                           space.name(first_mid) + "<" + space.name(y) + " vs " +
                           space.name(base) + ".." + space.name(m) + "<" + space.name(y);
                }
            }
            reach[y] = *agreed;
        }
    }
    return std::nullopt;
}

bool Sheaf::is_local_system() const {
    for (const auto& [key, m] : rest)
        if (!is_invertible(m)) return false;
    return true;
}

Sheaf direct_sum(const Sheaf& a, const Sheaf& b) {
    if (!(a.space == b.space)) throw shape_error("direct_sum: different spaces");
    std::vector<int> stalks(a.space.size());
    for (int x = 0; x < a.space.size(); ++x) stalks[x] = a.stalk[x] + b.stalk[x];
    Sheaf s(a.space, std::move(stalks));
    for (auto [p, q] : a.space.cover_pairs())
        s.rest[{p, q}] = Matrix::diag_blocks(a.cover_map(p, q), b.cover_map(p, q));
    return s;
}

SheafMorphism::SheafMorphism(Sheaf src, Sheaf tgt)
    : source(std::move(src)), target(std::move(tgt)) {
    if (!(source.space == target.space)) throw shape_error("morphism across different spaces");
    for (int x = 0; x < source.space.size(); ++x)
        comp[x] = Matrix::zero(target.stalk[x], source.stalk[x]);
}

SheafMorphism SheafMorphism::identity(const Sheaf& f) {
    SheafMorphism m(f, f);
    for (int x = 0; x < f.space.size(); ++x) m.comp[x] = Matrix::identity(f.stalk[x]);
    return m;
}

const Matrix& SheafMorphism::at(int x) const { return comp.at(x); }
Matrix& SheafMorphism::at(int x) { return comp.at(x); }

std::optional<std::string> SheafMorphism::validate() const {
    for (int x = 0; x < source.space.size(); ++x) {
        const Matrix& m = comp.at(x);
        if (m.rows() != target.stalk[x] || m.cols() != source.stalk[x])
            return "component shape mismatch at " + source.space.name(x);
    }
    for (auto [a, b] : source.space.cover_pairs()) {
        if (!(target.cover_map(a, b) * comp.at(a) == comp.at(b) * source.cover_map(a, b)))
            return "naturality fails on " + source.space.name(a) + "<" + source.space.name(b);
    }
    return std::nullopt;
}

bool SheafMorphism::is_zero() const {
    for (const auto& [x, m] : comp)
        if (!m.is_zero()) return false;
    return true;
}

bool SheafMorphism::is_iso() const {
    for (const auto& [x, m] : comp)
        if (!is_invertible(m)) return false;
    return true;
}

SheafMorphism SheafMorphism::then(const SheafMorphism& next) const {
    SheafMorphism out(source, next.target);
    for (int x = 0; x < source.space.size(); ++x) out.comp[x] = next.comp.at(x) * comp.at(x);
    return out;
}

SheafMorphism SheafMorphism::inverse_iso() const {
    SheafMorphism out(target, source);
    for (int x = 0; x < source.space.size(); ++x) {
        auto inv = inverse(comp.at(x));
        if (!inv) throw model_error("inverse_iso: component not invertible at " +
                                    source.space.name(x));
        out.comp[x] = *inv;
    }
    return out;
}

SheafMorphism SheafMorphism::operator+(const SheafMorphism& o) const {
    SheafMorphism out(source, target);
    for (int x = 0; x < source.space.size(); ++x) out.comp[x] = comp.at(x) + o.comp.at(x);
    return out;
}

SheafMorphism SheafMorphism::operator-(const SheafMorphism& o) const {
    SheafMorphism out(source, target);
    for (int x = 0; x < source.space.size(); ++x) out.comp[x] = comp.at(x) - o.comp.at(x);
    return out;
}

SheafMorphism SheafMorphism::operator-() const {
    SheafMorphism out(source, target);
    for (int x = 0; x < source.space.size(); ++x) out.comp[x] = -comp.at(x);
    return out;
}

SheafMorphism direct_sum(const SheafMorphism& a, const SheafMorphism& b) {
    SheafMorphism out(direct_sum(a.source, b.source), direct_sum(a.target, b.target));
    for (int x = 0; x < a.source.space.size(); ++x)
        out.comp[x] = Matrix::diag_blocks(a.at(x), b.at(x));
    return out;
}

Matrix express_in_basis(const Matrix& basis, const Matrix& vectors) {
    auto sol = solve_linear(basis, vectors);
    if (!sol) throw model_error("vector does not lie in the expected subspace");
    return *sol;
}

namespace {

/// Subobject with stalkwise bases: induced map on a covering relation
/// expresses rest * basis_a in basis_b coordinates.
Sheaf sub_sheaf_from_bases(const Sheaf& ambient, const std::vector<Matrix>& bases,
                           SheafMorphism* mono_out) {
    std::vector<int> stalks(ambient.space.size());
    for (int x = 0; x < ambient.space.size(); ++x) stalks[x] = bases[x].cols();
    Sheaf s(ambient.space, std::move(stalks));
    for (auto [a, b] : ambient.space.cover_pairs())
        s.rest[{a, b}] = express_in_basis(bases[b], ambient.cover_map(a, b) * bases[a]);
    if (mono_out) {
        SheafMorphism mono(s, ambient);
        for (int x = 0; x < ambient.space.size(); ++x) mono.comp[x] = bases[x];
        *mono_out = std::move(mono);
    }
    return s;
}

/// Quotient with stalkwise projections: induced map solves
/// new_rest * proj_a = proj_b * rest, i.e. a transposed linear solve.
Sheaf quotient_sheaf_from_projections(const Sheaf& ambient, const std::vector<Matrix>& projs,
                                      SheafMorphism* epi_out) {
    std::vector<int> stalks(ambient.space.size());
    for (int x = 0; x < ambient.space.size(); ++x) stalks[x] = projs[x].rows();
    Sheaf s(ambient.space, std::move(stalks));
    for (auto [a, b] : ambient.space.cover_pairs()) {
        Matrix rhs = (projs[b] * ambient.cover_map(a, b)).transpose();
        auto sol = solve_linear(projs[a].transpose(), rhs);
        if (!sol) throw model_error("quotient map not well defined");
        s.rest[{a, b}] = sol->transpose();
    }
    if (epi_out) {
        SheafMorphism epi(ambient, s);
        for (int x = 0; x < ambient.space.size(); ++x) epi.comp[x] = projs[x];
        *epi_out = std::move(epi);
    }
    return s;
}

}  // namespace

PointwiseAbelian pointwise_abelian(const SheafMorphism& phi) {
    const Poset& p = phi.source.space;
    std::vector<Matrix> ker(p.size()), im(p.size()), cok(p.size());
    for (int x = 0; x < p.size(); ++x) {
        auto kic = kernel_image_cokernel(phi.at(x));
        ker[x] = kic.kernel;
        im[x] = kic.image;
        cok[x] = kic.cokernel;
    }
    PointwiseAbelian out;
    out.kernel = sub_sheaf_from_bases(phi.source, ker, &out.kernel_mono);
    out.image = sub_sheaf_from_bases(phi.target, im, &out.image_mono);
    out.cokernel = quotient_sheaf_from_projections(phi.target, cok, &out.cokernel_epi);
    return out;
}

Sheaf restrict_sheaf(const Sheaf& f, const Subspace& s) {
    Poset sub = induced_subposet(f.space, s.members);
    std::vector<int> stalks(sub.size());
    for (int i = 0; i < sub.size(); ++i) stalks[i] = f.stalk[f.space.index(sub.name(i))];
    Sheaf out(sub, std::move(stalks));
    for (auto [a, b] : sub.cover_pairs())
        out.rest[{a, b}] = f.rest_le(f.space.index(sub.name(a)), f.space.index(sub.name(b)));
    return out;
}

SheafMorphism restrict_morphism(const SheafMorphism& m, const Subspace& s) {
    SheafMorphism out(restrict_sheaf(m.source, s), restrict_sheaf(m.target, s));
    for (int i = 0; i < out.source.space.size(); ++i)
        out.comp[i] = m.at(m.source.space.index(out.source.space.name(i)));
    return out;
}

Sheaf pushforward_closed(const Sheaf& g, const Poset& ambient, const Subspace& z) {
    if (z.kind != SubsetKind::closed && classify_subset(ambient, z.members) != SubsetKind::closed &&
        classify_subset(ambient, z.members) != SubsetKind::clopen)
        throw input_error("pushforward_closed requires a closed subspace");
    std::vector<int> stalks(ambient.size(), 0);
    for (int i = 0; i < g.space.size(); ++i)
        stalks[ambient.index(g.space.name(i))] = g.stalk[i];
    Sheaf out(ambient, std::move(stalks));
    for (auto [a, b] : ambient.cover_pairs()) {
        if (out.stalk[a] == 0 || out.stalk[b] == 0) continue;
        out.rest[{a, b}] =
            g.rest_le(g.space.index(ambient.name(a)), g.space.index(ambient.name(b)));
    }
    return out;
}

SheafMorphism pushforward_closed(const SheafMorphism& m, const Poset& ambient,
                                 const Subspace& z) {
    SheafMorphism out(pushforward_closed(m.source, ambient, z),
                      pushforward_closed(m.target, ambient, z));
    for (int i = 0; i < m.source.space.size(); ++i)
        out.comp[ambient.index(m.source.space.name(i))] = m.at(i);
    return out;
}

SectionSpace sections_over_up_set(const Sheaf& f, const std::vector<int>& up_set_members) {
    std::vector<int> elems = up_set_members;
    std::sort(elems.begin(), elems.end());
    std::map<int, int> offset;
    int total = 0;
    for (int x : elems) {
        offset[x] = total;
        total += f.stalk[x];
    }
    std::set<int> in(elems.begin(), elems.end());
    // One block row per covering relation inside the up-set.
    std::vector<std::pair<int, int>> constraints;
    for (auto [a, b] : f.space.cover_pairs())
        if (in.count(a) && in.count(b)) constraints.emplace_back(a, b);
    int crows = 0;
    for (auto& [a, b] : constraints) crows += f.stalk[b];
    Matrix c(crows, total);
    int row = 0;
    for (auto& [a, b] : constraints) {
        const Matrix& r = f.cover_map(a, b);
        for (int i = 0; i < f.stalk[b]; ++i) {
            c.at(row + i, offset[b] + i) = Rational(1);
            for (int j = 0; j < f.stalk[a]; ++j)
                c.at(row + i, offset[a] + j) = c.at(row + i, offset[a] + j) - r.at(i, j);
        }
        row += f.stalk[b];
    }
    return SectionSpace{std::move(elems), kernel_basis(c)};
}

Matrix SectionSpace::eval(const Sheaf& f, int x) const {
    int off = 0;
    for (int e : elements) {
        if (e == x) return basis.sub(off, 0, f.stalk[x], basis.cols());
        off += f.stalk[e];
    }
    throw shape_error("element not in section domain");
}

Matrix SectionSpace::coords(const Matrix& family_columns) const {
    return express_in_basis(basis, family_columns);
}

FiberProduct fiber_product(const SheafMorphism& f, const SheafMorphism& g) {
    if (!(f.target.space == g.target.space)) throw shape_error("fiber_product: target mismatch");
    const Poset& p = f.source.space;
    std::vector<Matrix> bases(p.size());
    Sheaf paired = direct_sum(f.source, g.source);
    for (int x = 0; x < p.size(); ++x)
        bases[x] = kernel_basis(Matrix::hstack(f.at(x), -g.at(x)));
    FiberProduct out;
    SheafMorphism mono;
    out.total = sub_sheaf_from_bases(paired, bases, &mono);
    out.to_a = SheafMorphism(out.total, f.source);
    out.to_b = SheafMorphism(out.total, g.source);
    for (int x = 0; x < p.size(); ++x) {
        out.to_a.comp[x] = bases[x].sub(0, 0, f.source.stalk[x], bases[x].cols());
        out.to_b.comp[x] = bases[x].sub(f.source.stalk[x], 0, g.source.stalk[x], bases[x].cols());
    }
    return out;
}

SheafMorphism fiber_product_factor(const FiberProduct& fp, const SheafMorphism& t_a,
                                   const SheafMorphism& t_b) {
    SheafMorphism out(t_a.source, fp.total);
    for (int x = 0; x < t_a.source.space.size(); ++x) {
        Matrix stacked_basis = Matrix::vstack(fp.to_a.at(x), fp.to_b.at(x));
        Matrix stacked_target = Matrix::vstack(t_a.at(x), t_b.at(x));
        out.comp[x] = express_in_basis(stacked_basis, stacked_target);
    }
    return out;
}

}  // namespace stratal
