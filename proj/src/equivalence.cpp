#include "stratal/equivalence.hpp"

#include <algorithm>

namespace stratal {

namespace {

/// tau^{<=top} of a map between gamma_l complexes: reuse the low components,
/// corestrict the top one onto the kernel subsheaves.
ChainMap truncate_map(const ChainMap& g, const Truncation& src, const Truncation& tgt, int top) {
    ChainMap out(src.complex, tgt.complex);
    for (int k = src.complex.min_degree(); k < top; ++k) out.set_comp(k, g.comp(k));
    SheafMorphism top_comp(src.complex.term(top), tgt.complex.term(top));
    SheafMorphism raw = g.comp(top);
    for (int x = 0; x < src.complex.space.size(); ++x) {
        Matrix moved = raw.at(x) * src.inclusion.comp(top).at(x);
        top_comp.comp[x] = express_in_basis(tgt.inclusion.comp(top).at(x), moved);
    }
    out.set_comp(top, std::move(top_comp));
    return out;
}

void require_valid(const ChainMap& m, const std::string& what) {
    if (auto err = m.validate()) throw model_error(what + ": " + *err);
}

void require_valid(const SheafComplex& c, const std::string& what) {
    if (auto err = c.validate()) throw model_error(what + ": " + *err);
}

}  // namespace

AppendedComplex make_appended(const SheafComplex& gamma_l, const Sheaf& top,
                              const SheafMorphism& from_h, int d) {
    AppendedComplex out;
    Truncation t = truncate_le(gamma_l, -d - 1);
    out.trunc = t.complex;
    out.trunc_incl = t.inclusion;
    out.h_l = cohomology_data(gamma_l, -d - 1);
    out.top = top;

    SheafComplex shifted = shift(out.trunc, -1);
    SheafComplex top_complex = SheafComplex::single(top, -d);
    out.attach = ChainMap(shifted, top_complex);
    SheafMorphism comp(shifted.term(-d), top);
    for (int x = 0; x < gamma_l.space.size(); ++x)
        comp.comp[x] = from_h.at(x) * out.h_l.pr_from_ker[x];
    out.attach.set_comp(-d, std::move(comp));
    require_valid(out.attach, "appended attaching map");
    out.cone_data = cone(out.attach);
    require_valid(out.cone_data.cone, "appended complex");
    return out;
}

ChainMap appended_map(const AppendedComplex& src, const AppendedComplex& tgt,
                      const ChainMap& gamma_l_map, const SheafMorphism& top_map) {
    Truncation st{src.trunc, src.trunc_incl};
    Truncation tt{tgt.trunc, tgt.trunc_incl};
    ChainMap base = truncate_map(gamma_l_map, st, tt, src.trunc.max_degree());
    // The appended top sits in the single degree of the attach target.
    int top_degree = src.attach.target.min_degree();
    ChainMap out = cone_map(src.cone_data, tgt.cone_data, shift(base, -1),
                            ChainMap::single(top_map, top_degree));
    require_valid(out, "appended map");
    return out;
}

RotationZig rotation_zig(const SheafComplex& d_complex, const GammaClosed& tri, int d) {
    RotationZig out;
    CohomologyData h_l = cohomology_data(tri.gamma_l, -d - 1);
    CohomologyData h_k = cohomology_data(tri.gamma_k, -d);
    SheafMorphism delta_h = connecting_on_h(tri, h_l, h_k, -d - 1);
    out.a_form = make_appended(tri.gamma_l, h_k.h, delta_h, d);

    const Poset& space = d_complex.space;
    Truncation tk = truncate_le(tri.gamma_k, -d);
    SheafComplex shifted = shift(out.a_form.trunc, -1);

    // Attaching maps against the three gamma_k models.
    ChainMap u_tk(shifted, tk.complex);
    ChainMap u_gk(shifted, tri.gamma_k);
    for (int m = shifted.min_degree(); m <= shifted.max_degree(); ++m) {
        // shifted^m = trunc^{m-1} -> gamma_k^m via the connecting map.
        SheafMorphism into_gk(shifted.term(m), tri.gamma_k.term(m));
        SheafMorphism raw = tri.connecting.comp(m - 1);
        for (int x = 0; x < space.size(); ++x)
            into_gk.comp[x] = raw.at(x) * out.a_form.trunc_incl.comp(m - 1).at(x);
        if (m < -d) {
            u_tk.set_comp(m, into_gk);
        } else {
            SheafMorphism core(shifted.term(m), tk.complex.term(m));
            for (int x = 0; x < space.size(); ++x)
                core.comp[x] = express_in_basis(tk.inclusion.comp(m).at(x), into_gk.at(x));
            u_tk.set_comp(m, std::move(core));
        }
        u_gk.set_comp(m, std::move(into_gk));
    }
    require_valid(u_tk, "rotation: truncated attaching map");
    require_valid(u_gk, "rotation: attaching map");

    Cone c_tk = cone(u_tk);
    Cone c_gk = cone(u_gk);
    Cone c_full = cone(shift(tri.connecting, -1));
    out.cone_tk = c_tk.cone;
    out.cone_gk = c_gk.cone;
    out.cone_full = c_full.cone;

    // cone_tk -> a_form over the cohomology projection of the kernel term.
    ChainMap pr_h(tk.complex, out.a_form.attach.target);
    SheafMorphism pr_comp(tk.complex.term(-d), out.a_form.top);
    for (int x = 0; x < space.size(); ++x) pr_comp.comp[x] = h_k.pr_from_ker[x];
    pr_h.set_comp(-d, std::move(pr_comp));
    require_valid(pr_h, "rotation: projection to cohomology");
    out.to_a_form = cone_map(c_tk, out.a_form.cone_data, ChainMap::identity(shifted), pr_h);
    require_valid(out.to_a_form, "rotation: map to appended form");

    out.to_cone_gk = cone_map(c_tk, c_gk, ChainMap::identity(shifted), tk.inclusion);
    require_valid(out.to_cone_gk, "rotation: truncation comparison");

    out.to_cone_full = cone_map(c_gk, c_full, shift(out.a_form.trunc_incl, -1),
                                ChainMap::identity(tri.gamma_k));
    require_valid(out.to_cone_full, "rotation: gamma_l untruncation");

    // cone_full^k = gamma_l^k (+) (D^k (+) gamma_l^{k-1}): project onto D.
    out.to_ambient = ChainMap(out.cone_full, d_complex);
    for (int k = out.cone_full.min_degree(); k <= out.cone_full.max_degree(); ++k) {
        SheafMorphism comp(out.cone_full.term(k), d_complex.term(k));
        for (int x = 0; x < space.size(); ++x) {
            int gl_k = tri.gamma_l.term(k).stalk[x];
            int dd = d_complex.term(k).stalk[x];
            Matrix m(dd, out.cone_full.term(k).stalk[x]);
            for (int r = 0; r < dd; ++r) m.at(r, gl_k + r) = Rational(1);
            comp.comp[x] = std::move(m);
        }
        out.to_ambient.set_comp(k, std::move(comp));
    }
    require_valid(out.to_ambient, "rotation: projection to the ambient complex");
    return out;
}

GluedExtensionData build_b_phi(const CftgContext& ctx, const CftgObject& o) {
    const Poset& space = ctx.x.space;
    const FgtData& fgt = o.fgt;

    GluedExtensionData out;
    Sheaf f_x0 = restrict_sheaf(fgt.h_k.h, ctx.x.x0);
    SheafMorphism eta_s =
        restrict_morphism(section_unit(space, ctx.x.x0, fgt.h_k.h), ctx.x.s);
    out.triple.closed_part = ctx.x.s;
    out.triple.on_closed = o.b;
    out.triple.on_open = f_x0;
    out.triple.glue = o.v.then(eta_s);
    if (auto err = validate_triple(space, out.triple))
        throw model_error("glued extension triple invalid: " + *err);
    out.b = gluing_functor(space, out.triple);

    // phi through the universal property: the closed leg factors through u,
    // the open leg is the unit followed by the connecting map on sections.
    SheafMorphism closed_leg(fgt.h_l.h, out.b.product.to_a.target);
    for (int idx = 0; idx < ctx.x.s_poset().size(); ++idx) {
        int x = space.index(ctx.x.s_poset().name(idx));
        closed_leg.comp[x] = o.u.at(idx);
    }
    SheafMorphism delta_x0 = restrict_morphism(fgt.connecting_h, ctx.x.x0);
    SheafMorphism open_leg =
        section_unit(space, ctx.x.x0, fgt.h_l.h)
            .then(pushforward_open_sections_map(space, ctx.x.x0, delta_x0));
    out.phi = fiber_product_factor(out.b.product, closed_leg, open_leg);
    return out;
}

PFunctorResult functor_p(const CftgContext& ctx, const CftgObject& o) {
    PFunctorResult out;
    out.glue = build_b_phi(ctx, o);
    out.appended =
        make_appended(o.fgt.triangle.gamma_l, out.glue.b.sheaf, out.glue.phi, ctx.x.d);
    require_valid(out.appended.complex(), "P(gimel)");
    PerversityReport rep = is_perverse(ctx.x, out.appended.complex());
    if (!rep.verdict) {
        std::string msg = "P(gimel) is not perverse:";
        for (const auto& f : rep.failures) msg += " " + f;
        throw model_error(msg);
    }
    return out;
}

CFunctorResult functor_c(const CftgContext& ctx, const SheafComplex& f) {
    const Poset& space = ctx.x.space;
    PerversityReport rep = is_perverse(ctx.x, f);
    if (!rep.verdict) {
        std::string msg = "functor C needs a perverse input:";
        for (const auto& e : rep.failures) msg += " " + e;
        throw input_error(msg);
    }

    CFunctorResult out;
    SheafComplex j_f = restrict_complex(f, ctx.x.x0);
    CohomologyData h_a = cohomology_data(j_f, -ctx.x.c);
    PerverseOnX0 a{h_a.h, -ctx.x.c};
    FgtData fgt = functor_fgt(ctx.x, ctx.k, a);

    Truncation tau = truncate_le(j_f, -ctx.x.c);
    out.tau_x0 = tau.complex;
    out.tau_incl = tau.inclusion;
    out.tau_pr = ChainMap(tau.complex, a.as_complex());
    {
        SheafMorphism pr(tau.complex.term(-ctx.x.c), a.ls);
        for (int x = 0; x < a.ls.space.size(); ++x) pr.comp[x] = h_a.pr_from_ker[x];
        out.tau_pr.set_comp(-ctx.x.c, std::move(pr));
    }
    require_valid(out.tau_pr, "functor C: cohomology projection");

    out.unit = adjunction_unit(space, ctx.x.x0, f);
    out.push_incl = derived_pushforward_open_map(space, ctx.x.x0, out.tau_incl);
    out.push_pr = derived_pushforward_open_map(space, ctx.x.x0, out.tau_pr);

    out.tri_f = gamma_closed(space, ctx.k, f);
    out.hl_f = cohomology_data(out.tri_f.gamma_l, -ctx.x.d - 1);
    out.hk_f = cohomology_data(out.tri_f.gamma_k, -ctx.x.d);
    out.delta_h_f = connecting_on_h(out.tri_f, out.hl_f, out.hk_f, -ctx.x.d - 1);

    // Comparison isomorphisms through the zig F -> Rj j^-1 F <- Rj tau -> Rj A.
    const SheafComplex& rj_jf = out.unit.target;
    const SheafComplex& rj_tau = out.push_incl.source;
    GammaClosed tri_jf = gamma_closed(space, ctx.k, rj_jf);
    GammaClosed tri_tau = gamma_closed(space, ctx.k, rj_tau);

    int dl = -ctx.x.d - 1, dk = -ctx.x.d;
    CohomologyData hl_jf = cohomology_data(tri_jf.gamma_l, dl);
    CohomologyData hl_tau = cohomology_data(tri_tau.gamma_l, dl);
    CohomologyData hk_jf = cohomology_data(tri_jf.gamma_k, dk);
    CohomologyData hk_tau = cohomology_data(tri_tau.gamma_k, dk);

    Subspace l = ctx.l;
    SheafMorphism e1 = induced_on_cohomology(gamma_open_map(space, l, out.unit), dl, out.hl_f,
                                             hl_jf);
    SheafMorphism e2 = induced_on_cohomology(gamma_open_map(space, l, out.push_incl), dl,
                                             hl_tau, hl_jf);
    SheafMorphism e3 = induced_on_cohomology(gamma_open_map(space, l, out.push_pr), dl, hl_tau,
                                             fgt.h_l);
    out.iota = e1.then(e2.inverse_iso()).then(e3);

    SheafMorphism k1 = induced_on_cohomology(gamma_closed_map(space, ctx.k, out.unit), dk,
                                             out.hk_f, hk_jf);
    SheafMorphism k2 = induced_on_cohomology(gamma_closed_map(space, ctx.k, out.push_incl), dk,
                                             hk_tau, hk_jf);
    SheafMorphism k3 = induced_on_cohomology(gamma_closed_map(space, ctx.k, out.push_pr), dk,
                                             hk_tau, fgt.h_k);
    out.kappa = k1.then(k2.inverse_iso()).then(k3);

    Sheaf b = restrict_sheaf(out.hk_f.h, ctx.x.s);
    SheafMorphism iota_s = restrict_morphism(out.iota, ctx.x.s);
    SheafMorphism u = iota_s.inverse_iso().then(restrict_morphism(out.delta_h_f, ctx.x.s));
    SheafMorphism v = restrict_morphism(out.kappa, ctx.x.s);

    out.object = make_object(ctx, a, std::move(fgt), b, u, v);
    if (auto err = validate_object(ctx, out.object))
        throw model_error("functor C output violates the triangle: " + *err);
    return out;
}

PMorphismResult functor_p_on_morphism(const CftgContext& ctx, const CftgObject& src,
                                      const CftgObject& tgt, const CftgMorphism& m,
                                      const PFunctorResult& p_src,
                                      const PFunctorResult& p_tgt) {
    const Poset& space = ctx.x.space;
    ChainMap rj_g = derived_pushforward_open_map(space, ctx.x.x0, m.a_map.as_chain_map());
    ChainMap gl_g = gamma_open_map(space, ctx.l, rj_g);
    ChainMap gk_g = gamma_closed_map(space, ctx.k, rj_g);
    SheafMorphism h_map =
        induced_on_cohomology(gk_g, -ctx.x.d, src.fgt.h_k, tgt.fgt.h_k);

    TripleMorphism tm{m.b_map, restrict_morphism(h_map, ctx.x.x0)};
    SheafMorphism b_glued;
    try {
        b_glued = gluing_functor_map(space, p_src.glue.triple, p_tgt.glue.triple, tm);
    } catch (const input_error& err) {
        throw model_error(std::string("P on morphisms: glued square broke: ") + err.what());
    }

    Truncation st{p_src.appended.trunc, p_src.appended.trunc_incl};
    Truncation tt{p_tgt.appended.trunc, p_tgt.appended.trunc_incl};
    ChainMap base = truncate_map(gl_g, st, tt, p_src.appended.trunc.max_degree());

    PMorphismResult out;
    out.gamma_l_base = base;
    out.map = cone_map(p_src.appended.cone_data, p_tgt.appended.cone_data, shift(base, -1),
                       ChainMap::single(b_glued, -ctx.x.d));
    if (auto err = out.map.validate()) {
        // The square commutes up to homotopy; correct the cone map by an
        // explicit homotopy block.
        ChainMap lhs = p_src.appended.attach.then(ChainMap::single(b_glued, -ctx.x.d));
        ChainMap rhs = shift(base, -1).then(p_tgt.appended.attach);
        auto s = find_homotopy(lhs, rhs);
        if (!s) throw model_error("P on morphisms: square does not even commute up to homotopy");
        for (int sign = 0; sign < 2; ++sign) {
            ChainMap candidate = out.map;
            for (int k = candidate.source.min_degree(); k <= candidate.source.max_degree();
                 ++k) {
                SheafMorphism comp = candidate.comp(k);
                SheafMorphism block = s->comp(k + 1);
                for (int x = 0; x < space.size(); ++x) {
                    int a_cols = p_src.appended.attach.source.term(k + 1).stalk[x];
                    Matrix mm = comp.at(x);
                    int row0 = p_tgt.appended.attach.source.term(k + 1).stalk[x];
                    for (int r = 0; r < block.at(x).rows(); ++r)
                        for (int c = 0; c < a_cols; ++c)
                            mm.at(row0 + r, c) =
                                mm.at(row0 + r, c) +
                                (sign ? -block.at(x).at(r, c) : block.at(x).at(r, c));
                    comp.comp[x] = std::move(mm);
                }
                candidate.set_comp(k, std::move(comp));
            }
            if (!candidate.validate()) {
                out.map = candidate;
                break;
            }
            if (sign == 1) throw model_error("P on morphisms: homotopy correction failed");
        }
    }

    out.unique =
        hom_homotopy_classes(SheafComplex::single(p_src.glue.b.sheaf, -ctx.x.d),
                             p_tgt.appended.trunc)
                .dimension == 0 &&
        hom_homotopy_classes(p_src.appended.trunc,
                             SheafComplex::single(p_tgt.glue.b.sheaf, -ctx.x.d))
                .dimension == 0;
    return out;
}

CpRoundTrip roundtrip_cp(const CftgContext& ctx, const CftgObject& o) {
    const Poset& space = ctx.x.space;
    CpRoundTrip out;
    out.p = functor_p(ctx, o);
    out.cp = functor_c(ctx, out.p.complex());

    // --- The X0 comparison chain for the A component. ---
    RotationZig rz = rotation_zig(o.fgt.rj, o.fgt.triangle, ctx.x.d);

    SheafComplex e_x0 = restrict_complex(out.p.complex(), ctx.x.x0);
    SheafComplex aform_x0 = restrict_complex(rz.a_form.complex(), ctx.x.x0);
    ChainMap m1(e_x0, aform_x0);
    for (int k = e_x0.min_degree(); k <= e_x0.max_degree(); ++k) {
        if (k < -ctx.x.d)
            m1.set_comp(k, SheafMorphism::identity(e_x0.term(k)));
        else if (k == -ctx.x.d)
            m1.set_comp(k, out.p.glue.b.open_iso);
    }
    require_valid(m1, "round trip: glued top identification");

    ChainMap m2 = restrict_chain_map(rz.to_a_form, ctx.x.x0);
    ChainMap m3 = restrict_chain_map(rz.to_cone_gk, ctx.x.x0);
    ChainMap m4 = restrict_chain_map(rz.to_cone_full, ctx.x.x0);
    ChainMap m5 = restrict_chain_map(rz.to_ambient, ctx.x.x0);
    ChainMap m6 = bar_augmentation(space, ctx.x.x0, o.a.as_complex());

    for (const ChainMap* mm : {&m1, &m2, &m3, &m4, &m5, &m6})
        if (!is_quasi_iso(*mm))
            throw model_error("round trip: an X0 comparison arrow is not a quasi-isomorphism");

    // Induced maps on H^{-c} along the chain, inverting the backward arrows.
    int hc = -ctx.x.c;
    CohomologyData d0 = cohomology_data(e_x0, hc);
    CohomologyData d1 = cohomology_data(aform_x0, hc);
    CohomologyData d2 = cohomology_data(m2.source, hc);
    CohomologyData d3 = cohomology_data(m3.target, hc);
    CohomologyData d4 = cohomology_data(m4.target, hc);
    CohomologyData d5 = cohomology_data(m5.target, hc);
    CohomologyData d6 = cohomology_data(m6.source, hc);
    SheafMorphism a_iso = induced_on_cohomology(m1, hc, d0, d1)
                              .then(induced_on_cohomology(m2, hc, d2, d1).inverse_iso())
                              .then(induced_on_cohomology(m3, hc, d2, d3))
                              .then(induced_on_cohomology(m4, hc, d3, d4))
                              .then(induced_on_cohomology(m5, hc, d4, d5))
                              .then(induced_on_cohomology(m6, hc, d6, d5).inverse_iso());
    // Identify H^{-c} of the one-term complex with the local system itself.
    SheafMorphism a_map(out.cp.object.a.ls, o.a.ls);
    for (int x = 0; x < o.a.ls.space.size(); ++x) a_map.comp[x] = a_iso.at(x);

    // --- The B component through the supported inclusion. ---
    SheafComplex b_single = SheafComplex::single(out.p.glue.b.sheaf, -ctx.x.d);
    ChainMap iota_b = out.p.appended.cone_data.from_target;
    GammaClosed tri_b = gamma_closed(space, ctx.k, b_single);
    CohomologyData hk_b = cohomology_data(tri_b.gamma_k, -ctx.x.d);
    SheafMorphism bridge =
        induced_on_cohomology(gamma_closed_map(space, ctx.k, iota_b), -ctx.x.d, hk_b,
                              out.cp.hk_f);
    CohomologyData hb_plain = cohomology_data(b_single, -ctx.x.d);
    SheafMorphism e0 = induced_on_cohomology(tri_b.to_ambient, -ctx.x.d, hk_b, hb_plain);

    SheafMorphism b_map = restrict_morphism(bridge, ctx.x.s)
                              .inverse_iso()
                              .then(restrict_morphism(e0, ctx.x.s))
                              .then(out.p.glue.b.closed_iso);

    out.iso = CftgMorphism{PerverseMapOnX0{a_map, o.a.degree}, b_map};
    if (!out.iso.a_map.map.is_iso() || !out.iso.b_map.is_iso())
        throw model_error("round trip: comparison components are not invertible");
    if (auto err = validate_morphism(ctx, out.cp.object, o, out.iso))
        throw model_error("round trip: comparison is not a morphism of quadruples: " + *err);
    return out;
}

PcRoundTrip roundtrip_pc(const CftgContext& ctx, const SheafComplex& f) {
    const Poset& space = ctx.x.space;
    int d = ctx.x.d;
    PcRoundTrip out;
    out.c = functor_c(ctx, f);
    const CftgObject& o = out.c.object;
    out.pc = functor_p(ctx, o);
    const Sheaf& b_sheaf = out.pc.glue.b.sheaf;

    // Local-section triangles of the intermediate pushforwards, with the
    // comparison maps of their degree -d-1 cohomology toward Rj_* A.
    GammaClosed tri_jf = gamma_closed(space, ctx.k, out.c.unit.target);
    GammaClosed tri_tau = gamma_closed(space, ctx.k, out.c.push_incl.source);
    CohomologyData hl_jf = cohomology_data(tri_jf.gamma_l, -d - 1);
    CohomologyData hl_tau = cohomology_data(tri_tau.gamma_l, -d - 1);

    SheafMorphism h_unit = induced_on_cohomology(gamma_open_map(space, ctx.l, out.c.unit),
                                                 -d - 1, out.c.hl_f, hl_jf);
    SheafMorphism h_incl = induced_on_cohomology(gamma_open_map(space, ctx.l, out.c.push_incl),
                                                 -d - 1, hl_tau, hl_jf);
    SheafMorphism h_pr = induced_on_cohomology(gamma_open_map(space, ctx.l, out.c.push_pr),
                                               -d - 1, hl_tau, o.fgt.h_l);

    // iota_D: H^{-d-1}(gamma_l D) -> H^{-d-1}(gamma_l Rj A), compatible with
    // the three arrows of the pushforward zig.
    SheafMorphism iota_tau = h_pr;
    SheafMorphism iota_jf = h_incl.inverse_iso().then(h_pr);
    SheafMorphism iota_f = h_unit.then(iota_jf);

    // Appended complexes over the shared top B; the one over Rj A is P(C(F)).
    const SheafMorphism& phi = out.pc.glue.phi;
    AppendedComplex ap_f = make_appended(out.c.tri_f.gamma_l, b_sheaf, iota_f.then(phi), d);
    AppendedComplex ap_jf = make_appended(tri_jf.gamma_l, b_sheaf, iota_jf.then(phi), d);
    AppendedComplex ap_tau = make_appended(tri_tau.gamma_l, b_sheaf, iota_tau.then(phi), d);

    SheafMorphism id_b = SheafMorphism::identity(b_sheaf);
    ChainMap arrow_pr = appended_map(ap_tau, out.pc.appended,
                                     gamma_open_map(space, ctx.l, out.c.push_pr), id_b);
    ChainMap arrow_incl =
        appended_map(ap_tau, ap_jf, gamma_open_map(space, ctx.l, out.c.push_incl), id_b);
    ChainMap arrow_unit =
        appended_map(ap_f, ap_jf, gamma_open_map(space, ctx.l, out.c.unit), id_b);

    // The rotation ladder of F itself; its appended form carries the local
    // cohomology sheaf H^{-d}(gamma_k F) as top.
    RotationZig rz = rotation_zig(f, out.c.tri_f, d);

    // Glued comparison H^{-d}(gamma_k F) -> B: identity on the closed part
    // (the B component of C(F) is that restriction) and the degree -d
    // comparison iso on the open part.
    SheafMorphism closed_leg(out.c.hk_f.h, out.pc.glue.b.product.to_a.target);
    for (int idx = 0; idx < ctx.x.s_poset().size(); ++idx) {
        int x = space.index(ctx.x.s_poset().name(idx));
        closed_leg.comp[x] = Matrix::identity(out.c.hk_f.h.stalk[x]);
    }
    SheafMorphism kappa_x0 = restrict_morphism(out.c.kappa, ctx.x.x0);
    if (!kappa_x0.is_iso())
        throw model_error("round trip: the open-part comparison is not invertible");
    SheafMorphism open_leg =
        section_unit(space, ctx.x.x0, out.c.hk_f.h)
            .then(pushforward_open_sections_map(space, ctx.x.x0, kappa_x0));
    SheafMorphism h_top = fiber_product_factor(out.pc.glue.b.product, closed_leg, open_leg);
    ChainMap arrow_top =
        appended_map(rz.a_form, ap_f, ChainMap::identity(out.c.tri_f.gamma_l), h_top);

    // Zig-zag from P(C(F)) on the left to F on the right; forward[i] tells
    // whether arrows[i] runs node_i -> node_{i+1}.
    out.zigzag.arrows = {
        arrow_pr,        // A'(Rj tau) -> P(C(F))
        arrow_incl,      // A'(Rj tau) -> A'(Rj j^-1 F)
        arrow_unit,      // A'(F) -> A'(Rj j^-1 F)
        arrow_top,       // A(F) -> A'(F)
        rz.to_a_form,    // cone_tk -> A(F)
        rz.to_cone_gk,   // cone_tk -> cone_gk
        rz.to_cone_full, // cone_gk -> cone_full
        rz.to_ambient,   // cone_full -> F
    };
    out.zigzag.forward = {false, true, false, false, false, true, true, true};
    out.zigzag.all_quasi_iso = true;
    for (const auto& arrow : out.zigzag.arrows)
        if (!is_quasi_iso(arrow)) out.zigzag.all_quasi_iso = false;
    return out;
}

}  // namespace stratal
