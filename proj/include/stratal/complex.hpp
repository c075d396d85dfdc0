#ifndef STRATAL_COMPLEX_HPP
#define STRATAL_COMPLEX_HPP

#include <map>
#include <optional>
#include <vector>

#include "stratal/sheaf.hpp"

namespace stratal {

/// Bounded cochain complex of sheaves on a fixed poset. Absent degrees are
/// zero sheaves; differentials raise degree by one and compose to zero.
struct SheafComplex {
    Poset space;
    std::map<int, Sheaf> terms;           // only nonzero terms stored
    std::map<int, SheafMorphism> diffs;   // diff at k: term(k) -> term(k+1)

    SheafComplex() = default;
    explicit SheafComplex(Poset p) : space(std::move(p)) {}
    static SheafComplex single(const Sheaf& f, int degree);
    static SheafComplex zero(const Poset& p) { return SheafComplex(p); }

    Sheaf term(int k) const;
    SheafMorphism diff(int k) const;
    void set_term(int k, Sheaf f);
    void set_diff(int k, SheafMorphism d);
    /// Drop degrees whose term is the zero sheaf.
    void prune();

    int min_degree() const;  // 0 when empty
    int max_degree() const;
    bool is_zero_complex() const;

    std::optional<std::string> validate() const;

    friend bool operator==(const SheafComplex& a, const SheafComplex& b);
};

struct ChainMap {
    SheafComplex source;
    SheafComplex target;
    std::map<int, SheafMorphism> comps;

    ChainMap() = default;
    ChainMap(SheafComplex src, SheafComplex tgt);
    static ChainMap identity(const SheafComplex& c);
    /// A sheaf morphism viewed as a map of one-term complexes.
    static ChainMap single(const SheafMorphism& m, int degree);

    SheafMorphism comp(int k) const;
    void set_comp(int k, SheafMorphism m);

    ChainMap then(const ChainMap& next) const;  // next o this
    ChainMap operator-(const ChainMap& o) const;

    std::optional<std::string> validate() const;
};

/// h with f - g = d h + h d; components are sheaf morphisms term(k) ->
/// target term(k-1).
struct Homotopy {
    ChainMap f;
    ChainMap g;
    std::map<int, SheafMorphism> comps;

    SheafMorphism comp(int k) const;
    std::optional<std::string> validate() const;
};

SheafComplex shift(const SheafComplex& c, int n);
ChainMap shift(const ChainMap& f, int n);

SheafComplex direct_sum(const SheafComplex& a, const SheafComplex& b);

struct Cone {
    SheafComplex cone;     // cone^k = source^{k+1} (+) target^k
    ChainMap from_target;  // canonical inclusion
    ChainMap to_shifted_source;  // canonical projection onto source[1]
};
/// Convention: d(x, y) = (-d_src x, f x + d_tgt y).
Cone cone(const ChainMap& f);

/// Map between cones induced by a strictly commuting square
/// b o f = f' o a, component (x, y) -> (a x, b y).
ChainMap cone_map(const Cone& of_f, const Cone& of_fprime, const ChainMap& a, const ChainMap& b);

struct Truncation {
    SheafComplex complex;  // tau^{<=k}
    ChainMap inclusion;    // into the original
};
Truncation truncate_le(const SheafComplex& c, int k);

/// Cohomology in degree k with the coordinate data needed to build induced
/// maps: per element, a kernel basis inside term(k), the projection from
/// kernel coordinates onto H, and a section of it.
struct CohomologyData {
    Sheaf h;
    std::vector<Matrix> ker_basis;     // term(k)-dim x kerdim
    std::vector<Matrix> pr_from_ker;   // hdim x kerdim
    std::vector<Matrix> include;       // term(k)-dim x hdim, pr o coords o include = id
    int degree = 0;

    /// H-coordinates of vectors lying in ker d^k at element x.
    Matrix project(int x, const Matrix& vectors_in_term) const;
};
CohomologyData cohomology_data(const SheafComplex& c, int k);
Sheaf cohomology_sheaf(const SheafComplex& c, int k);

/// The sheaf map H^k(f) induced on cohomology.
SheafMorphism induced_on_cohomology(const ChainMap& f, int k,
                                    const CohomologyData& src_h, const CohomologyData& tgt_h);
SheafMorphism induced_on_cohomology(const ChainMap& f, int k);

bool is_quasi_iso(const ChainMap& f);

/// Restriction of complexes and chain maps to a subspace, termwise.
SheafComplex restrict_complex(const SheafComplex& c, const Subspace& s);
ChainMap restrict_chain_map(const ChainMap& f, const Subspace& s);

/// Basis of chain maps C -> D modulo homotopy.
struct HomClasses {
    int dimension = 0;
    std::vector<ChainMap> representatives;
    int chain_map_space_dim = 0;
    int boundary_space_dim = 0;
};
HomClasses hom_homotopy_classes(const SheafComplex& c, const SheafComplex& d);

/// Solve for a chain map alpha: A -> A' with u' o alpha homotopic to
/// beta o u, homotopy returned explicitly. `unique` certifies the two
/// Hom-vanishing hypotheses (computed, not assumed). Throws model_error when
/// no fill-in exists.
struct FillInResult {
    ChainMap alpha;
    Homotopy homotopy;  // between u' o alpha and beta o u
    bool unique = false;
};
FillInResult fill_in(const ChainMap& u, const ChainMap& u_prime, const ChainMap& beta,
                     const ChainMap& gamma);

/// The linear space of homotopies h between f and g (empty optional when
/// f and g are not homotopic).
std::optional<Homotopy> find_homotopy(const ChainMap& f, const ChainMap& g);

}  // namespace stratal

#endif
