#include "stratal/gluing.hpp"

#include <algorithm>
#include <functional>

namespace stratal {

namespace {

/// Members of U cap U_x in U-poset indices, ascending.
std::vector<int> open_up_set(const Poset& ambient, const Poset& u_poset, int x) {
    std::vector<int> out;
    for (int i = 0; i < u_poset.size(); ++i) {
        int y = ambient.index(u_poset.name(i));
        if (ambient.leq(x, y)) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Stack blocks (one per element, fixed column count) into one tall matrix.
Matrix stack_family(const Sheaf& f_on_u, const std::vector<int>& elements, int cols,
                    const std::function<Matrix(int)>& block_for) {
    int rows = 0;
    for (int e : elements) rows += f_on_u.stalk[e];
    Matrix out(rows, cols);
    int at = 0;
    for (int e : elements) {
        Matrix b = block_for(e);
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c) out.at(at + r, c) = b.at(r, c);
        at += f_on_u.stalk[e];
    }
    return out;
}

}  // namespace

OpenPushforward pushforward_open_sections(const Poset& ambient, const Subspace& u,
                                          const Sheaf& f_on_u) {
    const Poset& u_poset = f_on_u.space;
    OpenPushforward out;
    out.sections.resize(ambient.size());
    std::vector<int> stalks(ambient.size());
    for (int x = 0; x < ambient.size(); ++x) {
        out.sections[x] = sections_over_up_set(f_on_u, open_up_set(ambient, u_poset, x));
        stalks[x] = out.sections[x].dim();
    }
    Sheaf sheaf(ambient, std::move(stalks));
    for (auto [a, b] : ambient.cover_pairs()) {
        const SectionSpace& sa = out.sections[a];
        const SectionSpace& sb = out.sections[b];
        // Project the section family over a onto the (smaller) domain over b.
        Matrix projected = stack_family(f_on_u, sb.elements, sa.dim(), [&](int e) {
            return sa.eval(f_on_u, e);
        });
        sheaf.rest[{a, b}] = sb.coords(projected);
    }
    out.sheaf = std::move(sheaf);
    return out;
}

SheafMorphism pushforward_open_sections_map(const Poset& ambient, const Subspace& u,
                                            const SheafMorphism& phi_on_u) {
    OpenPushforward src = pushforward_open_sections(ambient, u, phi_on_u.source);
    OpenPushforward tgt = pushforward_open_sections(ambient, u, phi_on_u.target);
    SheafMorphism out(src.sheaf, tgt.sheaf);
    for (int x = 0; x < ambient.size(); ++x) {
        Matrix mapped = stack_family(phi_on_u.target, tgt.sections[x].elements,
                                     src.sections[x].dim(), [&](int e) {
                                         return phi_on_u.at(e) *
                                                src.sections[x].eval(phi_on_u.source, e);
                                     });
        out.comp[x] = tgt.sections[x].coords(mapped);
    }
    return out;
}

SheafMorphism section_unit(const Poset& ambient, const Subspace& u, const Sheaf& f_on_x) {
    Sheaf f_on_u = restrict_sheaf(f_on_x, u);
    OpenPushforward push = pushforward_open_sections(ambient, u, f_on_u);
    SheafMorphism out(f_on_x, push.sheaf);
    for (int x = 0; x < ambient.size(); ++x) {
        Matrix family = stack_family(f_on_u, push.sections[x].elements, f_on_x.stalk[x],
                                     [&](int e) {
                                         return f_on_x.rest_le(
                                             x, ambient.index(f_on_u.space.name(e)));
                                     });
        out.comp[x] = push.sections[x].coords(family);
    }
    return out;
}

Sheaf triple_glue_target(const Poset& ambient, const Subspace& closed_part,
                         const Sheaf& on_open) {
    Subspace u = Subspace::open_set(ambient, complement(ambient, closed_part.members));
    OpenPushforward push = pushforward_open_sections(ambient, u, on_open);
    return restrict_sheaf(push.sheaf, closed_part);
}

std::optional<std::string> validate_triple(const Poset& ambient, const GluingTriple& t) {
    if (!ambient.is_down_set(t.closed_part.members)) return "closed part is not a down-set";
    if (auto err = t.on_closed.validate()) return "closed sheaf: " + *err;
    if (auto err = t.on_open.validate()) return "open sheaf: " + *err;
    Sheaf target = triple_glue_target(ambient, t.closed_part, t.on_open);
    if (!(t.glue.target == target)) return "glue map does not land in i^-1 j_* of the open part";
    if (!(t.glue.source == t.on_closed)) return "glue map source mismatch";
    if (auto err = t.glue.validate()) return "glue map: " + *err;
    return std::nullopt;
}

std::optional<std::string> validate_triple_morphism(const Poset& ambient, const GluingTriple& t,
                                                    const GluingTriple& t2,
                                                    const TripleMorphism& m) {
    if (auto err = m.closed_map.validate()) return "closed component: " + *err;
    if (auto err = m.open_map.validate()) return "open component: " + *err;
    Subspace u = Subspace::open_set(ambient, complement(ambient, t.closed_part.members));
    SheafMorphism pushed = pushforward_open_sections_map(ambient, u, m.open_map);
    SheafMorphism pushed_on_f = restrict_morphism(pushed, t.closed_part);
    // g o phi_F = i^-1 j_*(phi_U) o f
    SheafMorphism lhs = m.closed_map.then(t2.glue);
    SheafMorphism rhs = t.glue.then(pushed_on_f);
    for (int x = 0; x < lhs.source.space.size(); ++x)
        if (!(lhs.at(x) == rhs.at(x)))
            return "comparison square fails at " + lhs.source.space.name(x);
    return std::nullopt;
}

GluingTriple restriction_functor(const Poset& ambient, const Subspace& closed_part,
                                 const Sheaf& f_on_x) {
    GluingTriple t;
    t.closed_part = closed_part;
    t.on_closed = restrict_sheaf(f_on_x, closed_part);
    Subspace u = Subspace::open_set(ambient, complement(ambient, closed_part.members));
    t.on_open = restrict_sheaf(f_on_x, u);
    t.glue = restrict_morphism(section_unit(ambient, u, f_on_x), closed_part);
    return t;
}

TripleMorphism restriction_functor_map(const Poset& ambient, const Subspace& closed_part,
                                       const SheafMorphism& phi_on_x) {
    Subspace u = Subspace::open_set(ambient, complement(ambient, closed_part.members));
    return TripleMorphism{restrict_morphism(phi_on_x, closed_part),
                          restrict_morphism(phi_on_x, u)};
}

GluedSheaf gluing_functor(const Poset& ambient, const GluingTriple& t) {
    Subspace u = Subspace::open_set(ambient, complement(ambient, t.closed_part.members));
    OpenPushforward push = pushforward_open_sections(ambient, u, t.on_open);
    Sheaf i_closed = pushforward_closed(t.on_closed, ambient, t.closed_part);
    Sheaf i_pull = pushforward_closed(restrict_sheaf(push.sheaf, t.closed_part), ambient,
                                      t.closed_part);

    // Leg 1: i_*(glue). Leg 2: the unit j_*F_U -> i_* i^{-1} j_*F_U, which is
    // the identity over the closed part and zero over U.
    SheafMorphism leg1(i_closed, i_pull);
    SheafMorphism leg2(push.sheaf, i_pull);
    for (int x = 0; x < ambient.size(); ++x) {
        if (t.closed_part.contains(x)) {
            leg1.comp[x] = t.glue.at(t.on_closed.space.index(ambient.name(x)));
            leg2.comp[x] = Matrix::identity(push.sheaf.stalk[x]);
        }
    }

    GluedSheaf out;
    out.product = fiber_product(leg1, leg2);
    out.sheaf = out.product.total;

    // Over F the product is the graph of the glue map.
    SheafMorphism to_closed_f = restrict_morphism(out.product.to_a, t.closed_part);
    out.closed_iso = SheafMorphism(to_closed_f.source, t.on_closed);
    for (int x = 0; x < t.on_closed.space.size(); ++x)
        out.closed_iso.comp[x] = to_closed_f.at(x);
    if (!out.closed_iso.is_iso())
        throw model_error("glued sheaf does not project isomorphically onto the closed part");

    // Over U the pushforward projection followed by evaluation at the point
    // identifies the stalk with the original open-part stalk.
    SheafMorphism to_push_u = restrict_morphism(out.product.to_b, u);
    out.open_iso = SheafMorphism(to_push_u.source, t.on_open);
    for (int i = 0; i < t.on_open.space.size(); ++i) {
        int x = ambient.index(t.on_open.space.name(i));
        out.open_iso.comp[i] = push.sections[x].eval(t.on_open, i) * to_push_u.at(i);
    }
    if (!out.open_iso.is_iso())
        throw model_error("glued sheaf does not restrict isomorphically onto the open part");
    return out;
}

SheafMorphism gluing_functor_map(const Poset& ambient, const GluingTriple& t,
                                 const GluingTriple& t2, const TripleMorphism& m) {
    if (auto err = validate_triple_morphism(ambient, t, t2, m))
        throw input_error("triple morphism invalid: " + *err);
    Subspace u = Subspace::open_set(ambient, complement(ambient, t.closed_part.members));
    GluedSheaf src = gluing_functor(ambient, t);
    GluedSheaf tgt = gluing_functor(ambient, t2);

    SheafMorphism closed_ext(src.product.to_a.target, tgt.product.to_a.target);
    for (int x = 0; x < ambient.size(); ++x)
        if (t.closed_part.contains(x))
            closed_ext.comp[x] = m.closed_map.at(t.on_closed.space.index(ambient.name(x)));
    SheafMorphism open_pushed = pushforward_open_sections_map(ambient, u, m.open_map);

    SheafMorphism ta = src.product.to_a.then(closed_ext);
    SheafMorphism tb = src.product.to_b.then(open_pushed);
    return fiber_product_factor(tgt.product, ta, tb);
}

QuasiInverseWitnesses quasi_inverse_witnesses(const Poset& ambient, const Subspace& closed_part,
                                              const Sheaf& f_on_x, const GluingTriple& t) {
    QuasiInverseWitnesses out;

    // GF(RF(F)) -> F: the closed projection over F, evaluation over U.
    GluingTriple rf = restriction_functor(ambient, closed_part, f_on_x);
    GluedSheaf glued = gluing_functor(ambient, rf);
    out.glue_restrict_to_id = SheafMorphism(glued.sheaf, f_on_x);
    for (int x = 0; x < ambient.size(); ++x) {
        if (closed_part.contains(x)) {
            out.glue_restrict_to_id.comp[x] =
                glued.closed_iso.at(glued.closed_iso.source.space.index(ambient.name(x)));
        } else {
            out.glue_restrict_to_id.comp[x] =
                glued.open_iso.at(glued.open_iso.source.space.index(ambient.name(x)));
        }
    }
    if (auto err = out.glue_restrict_to_id.validate())
        throw model_error("round-trip comparison is not natural: " + *err);
    if (!out.glue_restrict_to_id.is_iso())
        throw model_error("round-trip comparison is not invertible");

    // RF(GF(t)) -> t: the carried part identifications.
    GluedSheaf gt = gluing_functor(ambient, t);
    GluingTriple rgf = restriction_functor(ambient, closed_part, gt.sheaf);
    out.restrict_glue_to_id.closed_map = gt.closed_iso;
    out.restrict_glue_to_id.open_map = gt.open_iso;
    if (auto err = validate_triple_morphism(ambient, rgf, t, out.restrict_glue_to_id))
        throw model_error("triple round-trip square fails: " + *err);
    return out;
}

}  // namespace stratal
