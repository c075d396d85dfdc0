#include "stratal/complex.hpp"

#include <algorithm>
#include <tuple>

namespace stratal {

SheafComplex SheafComplex::single(const Sheaf& f, int degree) {
    SheafComplex c(f.space);
    if (!f.is_zero_sheaf()) c.terms[degree] = f;
    return c;
}

Sheaf SheafComplex::term(int k) const {
    auto it = terms.find(k);
    return it == terms.end() ? Sheaf::zero(space) : it->second;
}

SheafMorphism SheafComplex::diff(int k) const {
    auto it = diffs.find(k);
    return it == diffs.end() ? SheafMorphism(term(k), term(k + 1)) : it->second;
}

void SheafComplex::set_term(int k, Sheaf f) {
    if (f.is_zero_sheaf())
        terms.erase(k);
    else
        terms[k] = std::move(f);
}

void SheafComplex::set_diff(int k, SheafMorphism d) {
    if (d.is_zero())
        diffs.erase(k);
    else
        diffs[k] = std::move(d);
}

void SheafComplex::prune() {
    for (auto it = terms.begin(); it != terms.end();)
        it = it->second.is_zero_sheaf() ? terms.erase(it) : std::next(it);
    for (auto it = diffs.begin(); it != diffs.end();) {
        int k = it->first;
        if (!terms.count(k) || !terms.count(k + 1) || it->second.is_zero())
            it = diffs.erase(it);
        else
            ++it;
    }
}

int SheafComplex::min_degree() const { return terms.empty() ? 0 : terms.begin()->first; }
int SheafComplex::max_degree() const { return terms.empty() ? 0 : terms.rbegin()->first; }

bool SheafComplex::is_zero_complex() const {
    for (const auto& [k, f] : terms)
        if (!f.is_zero_sheaf()) return false;
    return true;
}

std::optional<std::string> SheafComplex::validate() const {
    for (const auto& [k, f] : terms) {
        if (!(f.space == space)) return "term space mismatch in degree " + std::to_string(k);
        if (auto err = f.validate()) return "degree " + std::to_string(k) + ": " + *err;
    }
    for (const auto& [k, d] : diffs) {
        if (!(d.source == term(k)) || !(d.target == term(k + 1)))
            return "differential endpoints wrong in degree " + std::to_string(k);
        if (auto err = d.validate()) return "d^" + std::to_string(k) + ": " + *err;
    }
    for (int k = min_degree(); k + 1 <= max_degree(); ++k) {
        if (!diff(k).then(diff(k + 1)).is_zero())
            return "d o d != 0 at degree " + std::to_string(k);
    }
    return std::nullopt;
}

bool operator==(const SheafComplex& a, const SheafComplex& b) {
    if (!(a.space == b.space)) return false;
    int lo = std::min(a.min_degree(), b.min_degree());
    int hi = std::max(a.max_degree(), b.max_degree());
    for (int k = lo; k <= hi; ++k) {
        if (!(a.term(k) == b.term(k))) return false;
        if (!(a.diff(k) == b.diff(k))) return false;
    }
    return true;
}

ChainMap::ChainMap(SheafComplex src, SheafComplex tgt)
    : source(std::move(src)), target(std::move(tgt)) {
    if (!(source.space == target.space)) throw shape_error("chain map across different spaces");
}

ChainMap ChainMap::identity(const SheafComplex& c) {
    ChainMap f(c, c);
    for (const auto& [k, t] : c.terms) f.comps[k] = SheafMorphism::identity(t);
    return f;
}

ChainMap ChainMap::single(const SheafMorphism& m, int degree) {
    ChainMap f(SheafComplex::single(m.source, degree), SheafComplex::single(m.target, degree));
    f.comps[degree] = m;
    return f;
}

SheafMorphism ChainMap::comp(int k) const {
    auto it = comps.find(k);
    if (it != comps.end()) return it->second;
    return SheafMorphism(source.term(k), target.term(k));
}

void ChainMap::set_comp(int k, SheafMorphism m) {
    if (m.is_zero())
        comps.erase(k);
    else
        comps[k] = std::move(m);
}

ChainMap ChainMap::then(const ChainMap& next) const {
    ChainMap out(source, next.target);
    int lo = std::min(source.min_degree(), next.target.min_degree());
    int hi = std::max(source.max_degree(), next.target.max_degree());
    for (int k = lo; k <= hi; ++k) out.set_comp(k, comp(k).then(next.comp(k)));
    return out;
}

ChainMap ChainMap::operator-(const ChainMap& o) const {
    ChainMap out(source, target);
    int lo = std::min(source.min_degree(), o.source.min_degree());
    int hi = std::max(source.max_degree(), o.source.max_degree());
    for (int k = lo; k <= hi; ++k) out.set_comp(k, comp(k) - o.comp(k));
    return out;
}

std::optional<std::string> ChainMap::validate() const {
    for (const auto& [k, m] : comps) {
        if (!(m.source == source.term(k)) || !(m.target == target.term(k)))
            return "component endpoints wrong in degree " + std::to_string(k);
        if (auto err = m.validate()) return "comp^" + std::to_string(k) + ": " + *err;
    }
    int lo = std::min(source.min_degree(), target.min_degree()) - 1;
    int hi = std::max(source.max_degree(), target.max_degree()) + 1;
    for (int k = lo; k <= hi; ++k) {
        SheafMorphism lhs = source.diff(k).then(comp(k + 1));
        SheafMorphism rhs = comp(k).then(target.diff(k));
        for (int x = 0; x < source.space.size(); ++x)
            if (!(lhs.at(x) == rhs.at(x)))
                return "chain condition fails in degree " + std::to_string(k) + " at " +
                       source.space.name(x);
    }
    return std::nullopt;
}

SheafMorphism Homotopy::comp(int k) const {
    auto it = comps.find(k);
    if (it != comps.end()) return it->second;
    return SheafMorphism(f.source.term(k), f.target.term(k - 1));
}

std::optional<std::string> Homotopy::validate() const {
    int lo = std::min(f.source.min_degree(), f.target.min_degree()) - 1;
    int hi = std::max(f.source.max_degree(), f.target.max_degree()) + 1;
    for (int k = lo; k <= hi; ++k) {
        SheafMorphism delta = f.comp(k) - g.comp(k);
        SheafMorphism bound = comp(k).then(f.target.diff(k - 1)) + f.source.diff(k).then(comp(k + 1));
        for (int x = 0; x < f.source.space.size(); ++x)
            if (!(delta.at(x) == bound.at(x)))
                return "homotopy identity fails in degree " + std::to_string(k) + " at " +
                       f.source.space.name(x);
    }
    return std::nullopt;
}

SheafComplex shift(const SheafComplex& c, int n) {
    SheafComplex out(c.space);
    for (const auto& [k, t] : c.terms) out.terms[k - n] = t;
    for (const auto& [k, d] : c.diffs) {
        SheafMorphism m = (n % 2 == 0) ? d : -d;
        out.diffs[k - n] = std::move(m);
    }
    return out;
}

ChainMap shift(const ChainMap& f, int n) {
    ChainMap out(shift(f.source, n), shift(f.target, n));
    for (const auto& [k, m] : f.comps) out.comps[k - n] = m;
    return out;
}

SheafComplex direct_sum(const SheafComplex& a, const SheafComplex& b) {
    SheafComplex out(a.space);
    int lo = std::min(a.min_degree(), b.min_degree());
    int hi = std::max(a.max_degree(), b.max_degree());
    for (int k = lo; k <= hi; ++k) {
        out.set_term(k, direct_sum(a.term(k), b.term(k)));
        out.set_diff(k, direct_sum(a.diff(k), b.diff(k)));
    }
    out.prune();
    return out;
}

Cone cone(const ChainMap& f) {
    const SheafComplex& a = f.source;
    const SheafComplex& b = f.target;
    SheafComplex c(a.space);
    int lo = std::min(a.min_degree() - 1, b.min_degree());
    int hi = std::max(a.max_degree() - 1, b.max_degree());
    for (int k = lo; k <= hi; ++k) c.set_term(k, direct_sum(a.term(k + 1), b.term(k)));
    for (int k = lo; k < hi; ++k) {
        SheafMorphism d(c.term(k), c.term(k + 1));
        SheafMorphism da = a.diff(k + 1);
        SheafMorphism db = b.diff(k);
        SheafMorphism fk = f.comp(k + 1);
        for (int x = 0; x < a.space.size(); ++x) {
            int sa = a.term(k + 1).stalk[x], sb = b.term(k).stalk[x];
            int ta = a.term(k + 2).stalk[x], tb = b.term(k + 1).stalk[x];
            Matrix m(ta + tb, sa + sb);
            for (int r = 0; r < ta; ++r)
                for (int cc = 0; cc < sa; ++cc) m.at(r, cc) = -da.at(x).at(r, cc);
            for (int r = 0; r < tb; ++r) {
                for (int cc = 0; cc < sa; ++cc) m.at(ta + r, cc) = fk.at(x).at(r, cc);
                for (int cc = 0; cc < sb; ++cc) m.at(ta + r, sa + cc) = db.at(x).at(r, cc);
            }
            d.comp[x] = std::move(m);
        }
        c.set_diff(k, std::move(d));
    }
    c.prune();

    Cone out;
    out.cone = c;
    out.from_target = ChainMap(b, out.cone);
    for (int k = lo; k <= hi; ++k) {
        SheafMorphism inc(b.term(k), out.cone.term(k));
        for (int x = 0; x < a.space.size(); ++x) {
            int sa = a.term(k + 1).stalk[x], sb = b.term(k).stalk[x];
            Matrix m(sa + sb, sb);
            for (int r = 0; r < sb; ++r) m.at(sa + r, r) = Rational(1);
            inc.comp[x] = std::move(m);
        }
        out.from_target.set_comp(k, std::move(inc));
    }
    SheafComplex a1 = shift(a, 1);
    out.to_shifted_source = ChainMap(out.cone, a1);
    for (int k = lo; k <= hi; ++k) {
        SheafMorphism pr(out.cone.term(k), a1.term(k));
        for (int x = 0; x < a.space.size(); ++x) {
            int sa = a.term(k + 1).stalk[x], sb = b.term(k).stalk[x];
            Matrix m(sa, sa + sb);
            for (int r = 0; r < sa; ++r) m.at(r, r) = Rational(1);
            pr.comp[x] = std::move(m);
        }
        out.to_shifted_source.set_comp(k, std::move(pr));
    }
    return out;
}

ChainMap cone_map(const Cone& of_f, const Cone& of_fprime, const ChainMap& a,
                  const ChainMap& b) {
    ChainMap out(of_f.cone, of_fprime.cone);
    int lo = of_f.cone.min_degree(), hi = of_f.cone.max_degree();
    lo = std::min(lo, of_fprime.cone.min_degree());
    hi = std::max(hi, of_fprime.cone.max_degree());
    for (int k = lo; k <= hi; ++k) {
        SheafMorphism m(of_f.cone.term(k), of_fprime.cone.term(k));
        for (int x = 0; x < out.source.space.size(); ++x)
            m.comp[x] = Matrix::diag_blocks(a.comp(k + 1).at(x), b.comp(k).at(x));
        out.set_comp(k, std::move(m));
    }
    return out;
}

Truncation truncate_le(const SheafComplex& c, int k) {
    SheafComplex t(c.space);
    ChainMap incl;
    for (const auto& [j, f] : c.terms)
        if (j < k) t.set_term(j, f);
    for (const auto& [j, d] : c.diffs)
        if (j + 1 < k) t.set_diff(j, d);

    // Kernel subsheaf in the top degree.
    Sheaf top = c.term(k);
    std::vector<Matrix> bases(c.space.size());
    SheafMorphism dk = c.diff(k);
    for (int x = 0; x < c.space.size(); ++x) bases[x] = kernel_basis(dk.at(x));
    std::vector<int> stalks(c.space.size());
    for (int x = 0; x < c.space.size(); ++x) stalks[x] = bases[x].cols();
    Sheaf kt(c.space, std::move(stalks));
    for (auto [a, b] : c.space.cover_pairs())
        kt.rest[{a, b}] = express_in_basis(bases[b], top.cover_map(a, b) * bases[a]);
    SheafMorphism mono(kt, top);
    for (int x = 0; x < c.space.size(); ++x) mono.comp[x] = bases[x];
    t.set_term(k, kt);
    // d^{k-1} corestricted to the kernel.
    SheafMorphism dk1 = c.diff(k - 1);
    SheafMorphism dcor(t.term(k - 1), t.term(k));
    for (int x = 0; x < c.space.size(); ++x)
        dcor.comp[x] = express_in_basis(bases[x], dk1.at(x));
    t.set_diff(k - 1, dcor);
    t.prune();

    incl = ChainMap(t, c);
    for (const auto& [j, f] : t.terms) {
        if (j < k)
            incl.set_comp(j, SheafMorphism::identity(f));
        else
            incl.set_comp(j, mono);
    }
    return Truncation{std::move(t), std::move(incl)};
}

CohomologyData cohomology_data(const SheafComplex& c, int k) {
    CohomologyData out;
    out.degree = k;
    int n = c.space.size();
    out.ker_basis.resize(n);
    out.pr_from_ker.resize(n);
    out.include.resize(n);
    SheafMorphism dk = c.diff(k);
    SheafMorphism dk1 = c.diff(k - 1);
    std::vector<int> stalks(n);
    std::vector<Matrix> hrest_inc(n);
    for (int x = 0; x < n; ++x) {
        Matrix ker = kernel_basis(dk.at(x));
        Matrix im = image_basis(dk1.at(x));
        Matrix im_in_ker = express_in_basis(ker, im);
        Matrix q = cokernel_projection(im_in_ker);
        Matrix sec = q.cols() == 0 ? Matrix::zero(q.cols(), q.rows())
                                   : *solve_linear(q, Matrix::identity(q.rows()));
        out.ker_basis[x] = ker;
        out.pr_from_ker[x] = q;
        out.include[x] = ker * sec;
        stalks[x] = q.rows();
    }
    Sheaf h(c.space, std::move(stalks));
    Sheaf top = c.term(k);
    for (auto [a, b] : c.space.cover_pairs()) {
        Matrix moved = top.cover_map(a, b) * out.include[a];
        Matrix coords = express_in_basis(out.ker_basis[b], moved);
        h.rest[{a, b}] = out.pr_from_ker[b] * coords;
    }
    out.h = std::move(h);
    return out;
}

Matrix CohomologyData::project(int x, const Matrix& vectors_in_term) const {
    return pr_from_ker[x] * express_in_basis(ker_basis[x], vectors_in_term);
}

Sheaf cohomology_sheaf(const SheafComplex& c, int k) { return cohomology_data(c, k).h; }

SheafMorphism induced_on_cohomology(const ChainMap& f, int k, const CohomologyData& src_h,
                                    const CohomologyData& tgt_h) {
    SheafMorphism out(src_h.h, tgt_h.h);
    SheafMorphism fk = f.comp(k);
    for (int x = 0; x < f.source.space.size(); ++x)
        out.comp[x] = tgt_h.project(x, fk.at(x) * src_h.include[x]);
    return out;
}

SheafMorphism induced_on_cohomology(const ChainMap& f, int k) {
    return induced_on_cohomology(f, k, cohomology_data(f.source, k),
                                 cohomology_data(f.target, k));
}

bool is_quasi_iso(const ChainMap& f) {
    Cone c = cone(f);
    for (int k = c.cone.min_degree(); k <= c.cone.max_degree(); ++k)
        if (!cohomology_sheaf(c.cone, k).is_zero_sheaf()) return false;
    return true;
}

SheafComplex restrict_complex(const SheafComplex& c, const Subspace& s) {
    SheafComplex out(induced_subposet(c.space, s.members));
    for (const auto& [k, f] : c.terms) out.set_term(k, restrict_sheaf(f, s));
    for (const auto& [k, d] : c.diffs) out.set_diff(k, restrict_morphism(d, s));
    out.prune();
    return out;
}

ChainMap restrict_chain_map(const ChainMap& f, const Subspace& s) {
    ChainMap out(restrict_complex(f.source, s), restrict_complex(f.target, s));
    for (const auto& [k, m] : f.comps) out.set_comp(k, restrict_morphism(m, s));
    return out;
}

// ---------------------------------------------------------------------------
// Linear systems over families of matrix unknowns (chain maps, homotopies).

namespace {

struct Slot {
    int rows = 0, cols = 0, offset = 0;
};

/// Unknowns X_s (matrices), equations sum_t A_t X_{s_t} B_t = R. Rows are
/// kept sparse; vec() is row-major.
class VarSystem {
public:
    int add_slot(int rows, int cols) {
        Slot s{rows, cols, total_};
        slots_.push_back(s);
        total_ += rows * cols;
        return static_cast<int>(slots_.size()) - 1;
    }
    const Slot& slot(int i) const { return slots_[i]; }
    int total() const { return total_; }

    struct Term {
        int slot;
        Matrix left;    // A
        Matrix right;   // B
    };

    void add_equation(const std::vector<Term>& terms, const Matrix& rhs) {
        int m = rhs.rows(), n = rhs.cols();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                std::map<int, Rational> row;
                for (const auto& t : terms) {
                    const Slot& s = slots_[t.slot];
                    // coefficient of X(p,q) in (A X B)(i,j) is A(i,p) B(q,j)
                    for (int p = 0; p < s.rows; ++p) {
                        if (t.left.at(i, p).is_zero()) continue;
                        for (int q = 0; q < s.cols; ++q) {
                            if (t.right.at(q, j).is_zero()) continue;
                            row[s.offset + p * s.cols + q] += t.left.at(i, p) * t.right.at(q, j);
                        }
                    }
                }
                rows_.push_back(std::move(row));
                rhs_.push_back(rhs.at(i, j));
            }
    }

    SparseMatrix coefficient_matrix() const {
        SparseMatrix m(static_cast<int>(rows_.size()), total_);
        for (size_t r = 0; r < rows_.size(); ++r)
            for (const auto& [c, v] : rows_[r]) m.add(static_cast<int>(r), c, v);
        return m;
    }
    Matrix rhs_vector() const {
        Matrix v(static_cast<int>(rhs_.size()), 1);
        for (size_t r = 0; r < rhs_.size(); ++r) v.at(static_cast<int>(r), 0) = rhs_[r];
        return v;
    }

    Matrix unpack(const Matrix& solution_column, int slot) const {
        const Slot& s = slots_[slot];
        Matrix m(s.rows, s.cols);
        for (int p = 0; p < s.rows; ++p)
            for (int q = 0; q < s.cols; ++q)
                m.at(p, q) = solution_column.at(s.offset + p * s.cols + q, 0);
        return m;
    }

private:
    std::vector<Slot> slots_;
    int total_ = 0;
    std::vector<std::map<int, Rational>> rows_;
    std::vector<Rational> rhs_;
};

struct MapVars {
    // slot ids keyed by (degree, element); -1 when either side is 0-dim
    std::map<std::pair<int, int>, int> ids;
    int lo = 0, hi = 0;

    int id(int k, int x) const {
        auto it = ids.find({k, x});
        return it == ids.end() ? -1 : it->second;
    }
};

/// Register unknowns for degreewise maps C^k -> D^{k+shift}, with
/// naturality constraints along covering relations.
MapVars add_map_vars(VarSystem& sys, const SheafComplex& c, const SheafComplex& d, int shift_by) {
    MapVars mv;
    mv.lo = std::min(c.min_degree(), d.min_degree() - shift_by) - 1;
    mv.hi = std::max(c.max_degree(), d.max_degree() - shift_by) + 1;
    for (int k = mv.lo; k <= mv.hi; ++k) {
        Sheaf cs = c.term(k), ds = d.term(k + shift_by);
        for (int x = 0; x < c.space.size(); ++x) {
            if (cs.stalk[x] == 0 || ds.stalk[x] == 0) continue;
            mv.ids[{k, x}] = sys.add_slot(ds.stalk[x], cs.stalk[x]);
        }
    }
    // naturality: D.rest * X_a - X_b * C.rest = 0
    for (int k = mv.lo; k <= mv.hi; ++k) {
        Sheaf cs = c.term(k), ds = d.term(k + shift_by);
        for (auto [a, b] : c.space.cover_pairs()) {
            int ia = mv.id(k, a), ib = mv.id(k, b);
            if (ia < 0 && ib < 0) continue;
            std::vector<VarSystem::Term> terms;
            if (ia >= 0)
                terms.push_back({ia, ds.cover_map(a, b), Matrix::identity(cs.stalk[a])});
            if (ib >= 0)
                terms.push_back({ib, -Matrix::identity(ds.stalk[b]), cs.cover_map(a, b)});
            sys.add_equation(terms, Matrix::zero(ds.stalk[b], cs.stalk[a]));
        }
    }
    return mv;
}

/// Chain condition: X_{k+1} d_C - d_D X_k = 0.
void add_chain_condition(VarSystem& sys, const MapVars& mv, const SheafComplex& c,
                         const SheafComplex& d) {
    for (int k = mv.lo; k < mv.hi; ++k) {
        SheafMorphism dc = c.diff(k), dd = d.diff(k);
        for (int x = 0; x < c.space.size(); ++x) {
            int i0 = mv.id(k, x), i1 = mv.id(k + 1, x);
            if (i0 < 0 && i1 < 0) continue;
            std::vector<VarSystem::Term> terms;
            if (i1 >= 0)
                terms.push_back({i1, Matrix::identity(d.term(k + 1).stalk[x]), dc.at(x)});
            if (i0 >= 0) terms.push_back({i0, -dd.at(x), Matrix::identity(c.term(k).stalk[x])});
            sys.add_equation(terms, Matrix::zero(d.term(k + 1).stalk[x], c.term(k).stalk[x]));
        }
    }
}

ChainMap chain_map_from_solution(const VarSystem& sys, const MapVars& mv, const Matrix& sol,
                                 const SheafComplex& c, const SheafComplex& d) {
    ChainMap f(c, d);
    for (int k = mv.lo; k <= mv.hi; ++k) {
        SheafMorphism m(c.term(k), d.term(k));
        bool any = false;
        for (int x = 0; x < c.space.size(); ++x) {
            int id = mv.id(k, x);
            if (id < 0) continue;
            m.comp[x] = sys.unpack(sol, id);
            any = true;
        }
        if (any) f.set_comp(k, std::move(m));
    }
    return f;
}

}  // namespace

HomClasses hom_homotopy_classes(const SheafComplex& c, const SheafComplex& d) {
    // Chain map solution space.
    VarSystem csys;
    MapVars cv = add_map_vars(csys, c, d, 0);
    add_chain_condition(csys, cv, c, d);
    Matrix z = sparse_kernel_basis(csys.coefficient_matrix());

    // Homotopy space: degreewise natural maps C^k -> D^{k-1}, no further
    // conditions.
    VarSystem hsys;
    MapVars hv = add_map_vars(hsys, c, d, -1);
    Matrix hbasis = sparse_kernel_basis(hsys.coefficient_matrix());

    // Boundary d h + h d of each homotopy basis vector, written in raw
    // chain-map coordinates.
    Matrix boundary(csys.total(), hbasis.cols());
    for (int j = 0; j < hbasis.cols(); ++j) {
        Matrix hcol = hbasis.column(j);
        for (int k = cv.lo; k <= cv.hi; ++k) {
            SheafMorphism dd = d.diff(k - 1);
            SheafMorphism dc = c.diff(k);
            for (int x = 0; x < c.space.size(); ++x) {
                int cid = cv.id(k, x);
                if (cid < 0) continue;
                int hk = hv.id(k, x), hk1 = hv.id(k + 1, x);
                Matrix val = Matrix::zero(d.term(k).stalk[x], c.term(k).stalk[x]);
                if (hk >= 0) val = val + dd.at(x) * hsys.unpack(hcol, hk);
                if (hk1 >= 0) val = val + hsys.unpack(hcol, hk1) * dc.at(x);
                const Slot& s = csys.slot(cid);
                for (int p = 0; p < s.rows; ++p)
                    for (int q = 0; q < s.cols; ++q)
                        boundary.at(s.offset + p * s.cols + q, j) = val.at(p, q);
            }
        }
    }

    HomClasses out;
    out.chain_map_space_dim = z.cols();
    if (z.cols() == 0) return out;
    // Null-homotopic maps are chain maps, so the expression always succeeds.
    Matrix im_coords = express_in_basis(z, boundary);
    out.boundary_space_dim = rank(im_coords);
    out.dimension = z.cols() - out.boundary_space_dim;
    // Complete the boundary image to a basis by greedily adding coordinate
    // vectors; the added directions represent the homotopy classes.
    Matrix m = im_coords;
    int r = out.boundary_space_dim;
    for (int i = 0; i < z.cols() && r < z.cols(); ++i) {
        Matrix e = Matrix::zero(z.cols(), 1);
        e.at(i, 0) = Rational(1);
        Matrix wider = Matrix::hstack(m, e);
        if (rank(wider) > r) {
            m = wider;
            ++r;
            out.representatives.push_back(chain_map_from_solution(csys, cv, z.column(i), c, d));
        }
    }
    return out;
}

std::optional<Homotopy> find_homotopy(const ChainMap& f, const ChainMap& g) {
    const SheafComplex& c = f.source;
    const SheafComplex& d = f.target;
    VarSystem sys;
    MapVars hv = add_map_vars(sys, c, d, -1);
    // d h + h d = f - g, one equation per degree and element.
    int lo = hv.lo, hi = hv.hi;
    for (int k = lo; k <= hi; ++k) {
        SheafMorphism dd = d.diff(k - 1);
        SheafMorphism dc = c.diff(k);
        SheafMorphism delta = f.comp(k) - g.comp(k);
        for (int x = 0; x < c.space.size(); ++x) {
            int rows = d.term(k).stalk[x], cols = c.term(k).stalk[x];
            if (rows == 0 || cols == 0) continue;
            std::vector<VarSystem::Term> terms;
            int hk = hv.id(k, x), hk1 = hv.id(k + 1, x);
            if (hk >= 0) terms.push_back({hk, dd.at(x), Matrix::identity(cols)});
            if (hk1 >= 0) terms.push_back({hk1, Matrix::identity(rows), dc.at(x)});
            sys.add_equation(terms, delta.at(x));
        }
    }
    auto sol = sparse_solve(sys.coefficient_matrix(), sys.rhs_vector());
    if (!sol) return std::nullopt;
    Homotopy h;
    h.f = f;
    h.g = g;
    for (int k = hv.lo; k <= hv.hi; ++k) {
        SheafMorphism m(c.term(k), d.term(k - 1));
        bool any = false;
        for (int x = 0; x < c.space.size(); ++x) {
            int id = hv.id(k, x);
            if (id < 0) continue;
            m.comp[x] = sys.unpack(*sol, id);
            any = true;
        }
        if (any) h.comps[k] = std::move(m);
    }
    return h;
}

FillInResult fill_in(const ChainMap& u, const ChainMap& u_prime, const ChainMap& beta,
                     const ChainMap& gamma) {
    const SheafComplex& a = u.source;
    const SheafComplex& a2 = u_prime.source;
    const SheafComplex& b = u.target;
    const SheafComplex& b2 = u_prime.target;

    Cone cu = cone(u);
    Cone cu2 = cone(u_prime);
    if (!(gamma.source == cu.cone) || !(gamma.target == cu2.cone))
        throw shape_error("fill_in: gamma must run between the cones of u and u'");
    // Hypothesis: the square (beta, gamma) over the cone inclusions commutes
    // up to homotopy.
    if (!find_homotopy(cu.from_target.then(gamma), beta.then(cu2.from_target)))
        throw model_error("fill_in: right square does not commute up to homotopy");

    VarSystem sys;
    MapVars av = add_map_vars(sys, a, a2, 0);
    add_chain_condition(sys, av, a, a2);
    MapVars hv = add_map_vars(sys, a, b2, -1);
    // Left square: u' alpha - (d h + h d) = beta u.
    ChainMap rhs = u.then(beta);
    int lo = std::min(av.lo, hv.lo), hi = std::max(av.hi, hv.hi);
    for (int k = lo; k <= hi; ++k) {
        SheafMorphism up = u_prime.comp(k);
        SheafMorphism dd = b2.diff(k - 1);
        SheafMorphism dc = a.diff(k);
        for (int x = 0; x < a.space.size(); ++x) {
            int rows = b2.term(k).stalk[x], cols = a.term(k).stalk[x];
            if (rows == 0 || cols == 0) continue;
            std::vector<VarSystem::Term> terms;
            int ai = av.id(k, x), hk = hv.id(k, x), hk1 = hv.id(k + 1, x);
            if (ai >= 0) terms.push_back({ai, up.at(x), Matrix::identity(cols)});
            if (hk >= 0) terms.push_back({hk, -dd.at(x), Matrix::identity(cols)});
            if (hk1 >= 0) terms.push_back({hk1, -Matrix::identity(rows), dc.at(x)});
            sys.add_equation(terms, rhs.comp(k).at(x));
        }
    }
    // Rotated square: alpha[1] pi - (d h2 + h2 d) = pi' gamma. Without it the
    // solution class could drift by maps the triangle compatibility forbids.
    SheafComplex a2_shifted = shift(a2, 1);
    MapVars h2v = add_map_vars(sys, cu.cone, a2_shifted, -1);
    ChainMap rhs2 = gamma.then(cu2.to_shifted_source);
    int lo2 = std::min(cu.cone.min_degree(), a2_shifted.min_degree()) - 1;
    int hi2 = std::max(cu.cone.max_degree(), a2_shifted.max_degree()) + 1;
    for (int k = lo2; k <= hi2; ++k) {
        SheafMorphism pik = cu.to_shifted_source.comp(k);
        SheafMorphism dd2 = a2_shifted.diff(k - 1);
        SheafMorphism dcone = cu.cone.diff(k);
        for (int x = 0; x < a.space.size(); ++x) {
            int rows = a2_shifted.term(k).stalk[x], cols = cu.cone.term(k).stalk[x];
            if (rows == 0 || cols == 0) continue;
            std::vector<VarSystem::Term> terms;
            // alpha[1]^k = alpha^{k+1}
            int ai = av.id(k + 1, x), hk = h2v.id(k, x), hk1 = h2v.id(k + 1, x);
            if (ai >= 0) terms.push_back({ai, Matrix::identity(rows), pik.at(x)});
            if (hk >= 0) terms.push_back({hk, -dd2.at(x), Matrix::identity(cols)});
            if (hk1 >= 0) terms.push_back({hk1, -Matrix::identity(rows), dcone.at(x)});
            sys.add_equation(terms, rhs2.comp(k).at(x));
        }
    }
    auto sol = sparse_solve(sys.coefficient_matrix(), sys.rhs_vector());
    if (!sol) throw model_error("no fill-in: the completion system is inconsistent");

    FillInResult out;
    out.alpha = chain_map_from_solution(sys, av, *sol, a, a2);
    out.homotopy.f = out.alpha.then(u_prime);
    out.homotopy.g = u.then(beta);
    for (int k = hv.lo; k <= hv.hi; ++k) {
        SheafMorphism m(a.term(k), b2.term(k - 1));
        bool any = false;
        for (int x = 0; x < a.space.size(); ++x) {
            int id = hv.id(k, x);
            if (id < 0) continue;
            m.comp[x] = sys.unpack(*sol, id);
            any = true;
        }
        if (any) out.homotopy.comps[k] = std::move(m);
    }
    out.unique = hom_homotopy_classes(b, shift(cu2.cone, -1)).dimension == 0 &&
                 hom_homotopy_classes(cu.cone, b2).dimension == 0;
    return out;
}

}  // namespace stratal
