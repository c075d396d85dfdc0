#ifndef STRATAL_GLUING_HPP
#define STRATAL_GLUING_HPP

#include "stratal/sheaf.hpp"

namespace stratal {

/// Degree-0 pushforward along an open inclusion: the stalk at x is the space
/// of sections over U cap U_x, with projection-induced restriction maps.
struct OpenPushforward {
    Sheaf sheaf;                         // on the ambient poset
    std::vector<SectionSpace> sections;  // per ambient element, in U-poset indices
};
OpenPushforward pushforward_open_sections(const Poset& ambient, const Subspace& u,
                                          const Sheaf& f_on_u);
SheafMorphism pushforward_open_sections_map(const Poset& ambient, const Subspace& u,
                                            const SheafMorphism& phi_on_u);

/// The unit F -> j_* j^{-1} F for a sheaf on the ambient space.
SheafMorphism section_unit(const Poset& ambient, const Subspace& u, const Sheaf& f_on_x);

/// Gluing data over a closed subset F: sheaves on both parts and a
/// comparison map into the closed restriction of the section pushforward.
struct GluingTriple {
    Subspace closed_part;
    Sheaf on_closed;      // on the F poset
    Sheaf on_open;        // on the U poset
    SheafMorphism glue;   // on_closed -> restrict(j_* on_open, F)
};

/// Morphisms of triples: componentwise maps with the comparison square.
struct TripleMorphism {
    SheafMorphism closed_map;  // t.on_closed -> t'.on_closed
    SheafMorphism open_map;    // t.on_open -> t'.on_open
};

/// The target of the glue map, recomputed deterministically.
Sheaf triple_glue_target(const Poset& ambient, const Subspace& closed_part, const Sheaf& on_open);

std::optional<std::string> validate_triple(const Poset& ambient, const GluingTriple& t);
std::optional<std::string> validate_triple_morphism(const Poset& ambient, const GluingTriple& t,
                                                    const GluingTriple& t2,
                                                    const TripleMorphism& m);

/// The restriction functor: F on X becomes (F|_F, F|_U, eta).
GluingTriple restriction_functor(const Poset& ambient, const Subspace& closed_part,
                                 const Sheaf& f_on_x);
TripleMorphism restriction_functor_map(const Poset& ambient, const Subspace& closed_part,
                                       const SheafMorphism& phi_on_x);

/// The gluing functor: the pull-back of i_* glue against the unit of j_*,
/// with the canonical identifications on both parts carried explicitly.
struct GluedSheaf {
    Sheaf sheaf;               // on the ambient poset (= product.total)
    FiberProduct product;      // to_a: into i_* on_closed, to_b: into j_* on_open
    SheafMorphism closed_iso;  // restrict(sheaf, F) -> on_closed, invertible
    SheafMorphism open_iso;    // restrict(sheaf, U) -> on_open, invertible
};
GluedSheaf gluing_functor(const Poset& ambient, const GluingTriple& t);

/// Image of a triple morphism under the gluing functor (universal property).
/// Throws input_error when the comparison square does not commute.
SheafMorphism gluing_functor_map(const Poset& ambient, const GluingTriple& t,
                                 const GluingTriple& t2, const TripleMorphism& m);

/// The two object-level quasi-inverse witnesses.
struct QuasiInverseWitnesses {
    SheafMorphism glue_restrict_to_id;   // GF(RF(F)) -> F, invertible
    TripleMorphism restrict_glue_to_id;  // RF(GF(t)) -> t, both parts invertible
};
QuasiInverseWitnesses quasi_inverse_witnesses(const Poset& ambient, const Subspace& closed_part,
                                              const Sheaf& f_on_x, const GluingTriple& t);

}  // namespace stratal

#endif
