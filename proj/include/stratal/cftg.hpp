#ifndef STRATAL_CFTG_HPP
#define STRATAL_CFTG_HPP

#include "stratal/perverse.hpp"
#include "stratal/rng.hpp"

namespace stratal {

/// A stratified space with a chosen perverse closed set; the verdict for the
/// choice is recorded at construction together with its test family.
struct CftgContext {
    StratifiedSpace x;
    Subspace k;
    Subspace l;
    PerverseClosedReport certificate;
};
CftgContext make_context(const StratifiedSpace& x, const Subspace& k,
                         const std::vector<PerverseOnX0>& tests);

/// Objects are quadruples (A, B, u, v) with v o u = T_A. The functor data of
/// A is computed once at construction and carried along.
struct CftgObject {
    PerverseOnX0 a;
    FgtData fgt;       // F(A), G(A), T_A and the ambient intermediates
    Sheaf b;           // local system on the S poset
    SheafMorphism u;   // F(A) -> B
    SheafMorphism v;   // B -> G(A)
};
CftgObject make_object(const CftgContext& ctx, const PerverseOnX0& a, const Sheaf& b,
                       const SheafMorphism& u, const SheafMorphism& v);
/// Same, with the functor data already computed for this A.
CftgObject make_object(const CftgContext& ctx, const PerverseOnX0& a, FgtData fgt,
                       const Sheaf& b, const SheafMorphism& u, const SheafMorphism& v);
CftgObject zero_object(const CftgContext& ctx);

std::optional<std::string> validate_object(const CftgContext& ctx, const CftgObject& o);

/// Morphisms are pairs (a, b) making both prism squares commute.
struct CftgMorphism {
    PerverseMapOnX0 a_map;
    SheafMorphism b_map;
};
std::optional<std::string> validate_morphism(const CftgContext& ctx, const CftgObject& src,
                                             const CftgObject& tgt, const CftgMorphism& m);
CftgMorphism identity_morphism(const CftgObject& o);
CftgMorphism zero_morphism(const CftgObject& src, const CftgObject& tgt);
CftgMorphism compose(const CftgMorphism& first, const CftgMorphism& then);

struct CftgKernel {
    CftgObject object;
    CftgMorphism mono;  // object -> source
};
CftgKernel kernel(const CftgContext& ctx, const CftgObject& src, const CftgObject& tgt,
                  const CftgMorphism& m);

struct CftgCokernel {
    CftgObject object;
    CftgMorphism epi;  // target -> object
};
CftgCokernel cokernel(const CftgContext& ctx, const CftgObject& src, const CftgObject& tgt,
                      const CftgMorphism& m);

/// Unique factorization of t: T -> src through the kernel of m, for
/// m o t = 0. Throws model_error when the factorization fails to exist or to
/// be a morphism (which would falsify the universal property).
CftgMorphism factor_through_kernel(const CftgContext& ctx, const CftgObject& test,
                                   const CftgObject& src, const CftgObject& tgt,
                                   const CftgMorphism& m, const CftgKernel& ker,
                                   const CftgMorphism& t);
CftgMorphism factor_through_cokernel(const CftgContext& ctx, const CftgObject& src,
                                     const CftgObject& tgt, const CftgObject& test,
                                     const CftgMorphism& m, const CftgCokernel& cok,
                                     const CftgMorphism& t);

/// Image and coimage with the canonical comparison; `iso` is the canonical
/// map coim -> im, invertible exactly when the category behaves abelianly on
/// this morphism.
struct ImageCoimage {
    CftgObject image;
    CftgObject coimage;
    CftgMorphism coim_to_im;
    bool iso = false;
};
ImageCoimage image_coimage_compare(const CftgContext& ctx, const CftgObject& src,
                                   const CftgObject& tgt, const CftgMorphism& m);

/// Basis of the space of natural maps between two sheaves on the same poset.
std::vector<SheafMorphism> natural_map_basis(const Sheaf& a, const Sheaf& b);

/// Seeded generators for property runs: random local systems (full random
/// edge assignment when the poset allows it, coboundary twist otherwise),
/// random objects with v o u = T_A by construction, and random morphisms
/// drawn from the solved space of valid pairs (a, b).
Sheaf random_local_system(const Poset& p, int rank, Rng& rng);
CftgObject random_object(const CftgContext& ctx, Rng& rng, int max_rank);
CftgMorphism random_morphism(const CftgContext& ctx, const CftgObject& src, const CftgObject& tgt,
                             Rng& rng);

}  // namespace stratal

#endif
