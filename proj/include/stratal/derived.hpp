#ifndef STRATAL_DERIVED_HPP
#define STRATAL_DERIVED_HPP

#include "stratal/complex.hpp"

namespace stratal {

/// Derived pushforward along an open (up-set) inclusion U -> X, realized by
/// the chain-level bar construction: in bar degree p the stalk at x sums the
/// input stalks over strict p-chains inside U cap U_x, restriction maps are
/// projections onto sub-chain families, and the differential is the
/// alternating face sum (the last face applies the restriction map of the
/// input). Strictly functorial, which the gluing and cone constructions
/// depend on.
SheafComplex derived_pushforward_open(const Poset& ambient, const Subspace& u,
                                      const SheafComplex& c_on_u);
ChainMap derived_pushforward_open_map(const Poset& ambient, const Subspace& u,
                                      const ChainMap& f_on_u);

/// The unit C -> Rj_* j^{-1} C for a complex on the ambient space.
ChainMap adjunction_unit(const Poset& ambient, const Subspace& u, const SheafComplex& c_on_x);

/// For C on U itself: the stalkwise quasi-isomorphism C -> (Rj_* C)|_U.
ChainMap bar_augmentation(const Poset& ambient, const Subspace& u, const SheafComplex& c_on_u);

/// Local sections along an open subset: RGamma_L := Rj_{L*} j_L^{-1},
/// together with its unit.
struct GammaOpen {
    SheafComplex complex;
    ChainMap unit;  // C -> complex
};
GammaOpen gamma_open(const Poset& ambient, const Subspace& l, const SheafComplex& c_on_x);
ChainMap gamma_open_map(const Poset& ambient, const Subspace& l, const ChainMap& f_on_x);

/// Local cohomology along the closed complement, defined as the shifted cone
/// of the unit, with the canonical triangle maps
///   gamma_k -> C -> gamma_l -> gamma_k[1].
struct GammaClosed {
    SheafComplex gamma_k;
    ChainMap to_ambient;   // gamma_k -> C
    SheafComplex gamma_l;
    ChainMap unit;         // C -> gamma_l
    ChainMap connecting;   // gamma_l -> shift(gamma_k, 1), the cone inclusion
};
GammaClosed gamma_closed(const Poset& ambient, const Subspace& k, const SheafComplex& c_on_x);
/// Induced map on gamma_k for f: C -> C', strict by cone functoriality.
ChainMap gamma_closed_map(const Poset& ambient, const Subspace& k, const ChainMap& f_on_x);

/// Hypercohomology of the whole poset: the bar complex over the full chain
/// family, as a plain complex of vector spaces.
struct VectComplex {
    std::map<int, int> dims;
    std::map<int, Matrix> d;  // d[k]: dims[k] -> dims[k+1]
    int dim(int k) const;
    Matrix diff(int k) const;
    std::map<int, int> cohomology_dims() const;
};
VectComplex global_sections_complex(const SheafComplex& c);

}  // namespace stratal

#endif
