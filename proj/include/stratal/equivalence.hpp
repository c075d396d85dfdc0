#ifndef STRATAL_EQUIVALENCE_HPP
#define STRATAL_EQUIVALENCE_HPP

#include "stratal/cftg.hpp"
#include "stratal/gluing.hpp"

namespace stratal {

/// The glued extension sheaf of a quadruple: B is the gluing of (B-part,
/// j^{-1} H^{-d}(gamma_k Rj_* A), eta o v) and phi maps H^{-d-1}(gamma_l)
/// into it through the fiber-product universal property.
struct GluedExtensionData {
    GluingTriple triple;
    GluedSheaf b;
    SheafMorphism phi;  // H^{-d-1}(gamma_l Rj_* A) -> b.sheaf, on X
};
GluedExtensionData build_b_phi(const CftgContext& ctx, const CftgObject& o);

/// A complex of the shape "truncation below, one sheaf appended on top",
/// held as the literal cone of the degree-(-d) attaching map so that the
/// canonical triangle maps come from the cone structure.
struct AppendedComplex {
    SheafComplex trunc;      // tau^{<= -d-1} gamma_l
    ChainMap trunc_incl;     // trunc -> gamma_l
    CohomologyData h_l;      // of gamma_l in degree -d-1
    Sheaf top;               // the degree -d term
    ChainMap attach;         // shift(trunc, -1) -> single(top, -d)
    Cone cone_data;          // cone(attach); cone_data.cone is the complex

    const SheafComplex& complex() const { return cone_data.cone; }
};
AppendedComplex make_appended(const SheafComplex& gamma_l, const Sheaf& top,
                              const SheafMorphism& from_h, int d);

/// Strict map between appended complexes induced by a base map of the
/// gamma_l complexes and a compatible map of the tops.
ChainMap appended_map(const AppendedComplex& src, const AppendedComplex& tgt,
                      const ChainMap& gamma_l_map, const SheafMorphism& top_map);

/// The rotation ladder connecting the appended form of a complex D to D
/// itself: every arrow is a strict chain map, quasi-iso under the standing
/// perversity hypotheses (asserted by the callers).
struct RotationZig {
    AppendedComplex a_form;   // append(trunc, H^{-d}(gamma_k), connecting)
    SheafComplex cone_tk;     // against tau^{<=-d} gamma_k
    SheafComplex cone_gk;     // against gamma_k itself
    SheafComplex cone_full;   // against gamma_k with untruncated gamma_l
    ChainMap to_a_form;       // cone_tk -> a_form
    ChainMap to_cone_gk;      // cone_tk -> cone_gk
    ChainMap to_cone_full;    // cone_gk -> cone_full
    ChainMap to_ambient;      // cone_full -> D
};
RotationZig rotation_zig(const SheafComplex& d_complex, const GammaClosed& tri, int d);

/// P(gimel): the appended complex over B with attaching map phi.
struct PFunctorResult {
    GluedExtensionData glue;
    AppendedComplex appended;
    const SheafComplex& complex() const { return appended.complex(); }
};
PFunctorResult functor_p(const CftgContext& ctx, const CftgObject& o);

/// C(F): the quadruple of a perverse complex, with the comparison maps that
/// the round trips reuse.
struct CFunctorResult {
    CftgObject object;
    SheafComplex tau_x0;       // tau^{<=-c} j^{-1} F
    ChainMap tau_incl;         // tau_x0 -> j^{-1} F
    ChainMap tau_pr;           // tau_x0 -> A placed in degree -c
    ChainMap unit;             // F -> Rj_* j^{-1} F
    ChainMap push_incl;        // Rj_* tau -> Rj_* j^{-1} F
    ChainMap push_pr;          // Rj_* tau -> Rj_* A = fgt.rj
    GammaClosed tri_f;         // local cohomology triangle of F itself
    CohomologyData hl_f;       // H^{-d-1}(gamma_l F)
    CohomologyData hk_f;       // H^{-d}(gamma_k F)
    SheafMorphism delta_h_f;   // connecting on cohomology for F
    SheafMorphism iota;        // hl_f.h -> fgt.h_l.h, iso
    SheafMorphism kappa;       // hk_f.h -> fgt.h_k.h, iso
};
CFunctorResult functor_c(const CftgContext& ctx, const SheafComplex& f);

/// P on morphisms: the map between the appended complexes over the glued
/// morphism of the B sheaves, with the homotopy-uniqueness certificate.
struct PMorphismResult {
    ChainMap map;
    ChainMap gamma_l_base;  // tau^{<=-d-1} of the gamma_l level map
    bool unique = false;
};
PMorphismResult functor_p_on_morphism(const CftgContext& ctx, const CftgObject& src,
                                      const CftgObject& tgt, const CftgMorphism& m,
                                      const PFunctorResult& p_src, const PFunctorResult& p_tgt);

/// An explicit zig-zag of chain maps; corresponding entries of `forward`
/// tell whether the arrow points toward the right end.
struct ZigZag {
    std::vector<ChainMap> arrows;
    std::vector<bool> forward;
    bool all_quasi_iso = false;
};

/// C(P(gimel)) -> gimel: an isomorphism of quadruples.
struct CpRoundTrip {
    PFunctorResult p;
    CFunctorResult cp;
    CftgMorphism iso;  // cp.object -> gimel, both components invertible
};
CpRoundTrip roundtrip_cp(const CftgContext& ctx, const CftgObject& o);

/// P(C(F)) <-> F: a chain-level zig-zag, every arrow a quasi-isomorphism.
struct PcRoundTrip {
    CFunctorResult c;
    PFunctorResult pc;
    ZigZag zigzag;  // from P(C(F)) to F
};
PcRoundTrip roundtrip_pc(const CftgContext& ctx, const SheafComplex& f);

}  // namespace stratal

#endif
