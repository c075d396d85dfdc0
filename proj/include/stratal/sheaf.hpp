#ifndef STRATAL_SHEAF_HPP
#define STRATAL_SHEAF_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stratal/matrix.hpp"
#include "stratal/poset.hpp"

namespace stratal {

/// A sheaf on a finite poset, stored as a representation: one stalk per
/// element, one matrix per covering relation, maps pointing upward. Maps for
/// longer intervals are composites; path independence is the functoriality
/// invariant checked by validate().
struct Sheaf {
    Poset space;
    std::vector<int> stalk;                       // dimension per element
    std::map<std::pair<int, int>, Matrix> rest;   // keyed by covering pairs

    Sheaf() = default;
    Sheaf(Poset space_, std::vector<int> stalk_);

    static Sheaf zero(const Poset& p);
    static Sheaf constant(const Poset& p, int dim);
    /// Stalk `dim` at the named element, 0 elsewhere.
    static Sheaf skyscraper(const Poset& p, const std::string& at, int dim);

    int dim(int x) const { return stalk[x]; }
    int total_dim() const;
    bool is_zero_sheaf() const;

    const Matrix& cover_map(int a, int b) const;
    /// Composite along covering relations for any a <= b (identity at a = b).
    /// Deterministic path choice; validate() certifies path independence.
    Matrix rest_le(int a, int b) const;

    /// Shape + functoriality. Reports the first failing pair of paths as a
    /// diamond-style witness.
    std::optional<std::string> validate() const;

    /// All restriction maps invertible (and square).
    bool is_local_system() const;

    friend bool operator==(const Sheaf& a, const Sheaf& b) {
        return a.space == b.space && a.stalk == b.stalk && a.rest == b.rest;
    }
};

Sheaf direct_sum(const Sheaf& a, const Sheaf& b);

/// A map of sheaves over the same space: one matrix per element, natural
/// with respect to every restriction map.
struct SheafMorphism {
    Sheaf source;
    Sheaf target;
    std::map<int, Matrix> comp;

    SheafMorphism() = default;
    SheafMorphism(Sheaf src, Sheaf tgt);  // zero morphism
    static SheafMorphism identity(const Sheaf& f);

    const Matrix& at(int x) const;
    Matrix& at(int x);

    std::optional<std::string> validate() const;
    bool is_zero() const;
    bool is_iso() const;

    SheafMorphism then(const SheafMorphism& next) const;    // next o this
    SheafMorphism inverse_iso() const;                      // throws model_error if not iso
    SheafMorphism operator+(const SheafMorphism& o) const;
    SheafMorphism operator-(const SheafMorphism& o) const;
    SheafMorphism operator-() const;

    friend bool operator==(const SheafMorphism& a, const SheafMorphism& b) {
        return a.source == b.source && a.target == b.target && a.comp == b.comp;
    }
};

SheafMorphism direct_sum(const SheafMorphism& a, const SheafMorphism& b);

/// Stalkwise kernel/image/cokernel with induced restriction maps.
struct PointwiseAbelian {
    Sheaf kernel;
    SheafMorphism kernel_mono;    // kernel -> source
    Sheaf image;
    SheafMorphism image_mono;     // image -> target
    Sheaf cokernel;
    SheafMorphism cokernel_epi;   // target -> cokernel
};
PointwiseAbelian pointwise_abelian(const SheafMorphism& phi);

/// Restriction to a subspace; the result lives on the induced subposet
/// (same element names). Open/closed/arbitrary all make sense because maps
/// for induced covering relations are ambient composites.
Sheaf restrict_sheaf(const Sheaf& f, const Subspace& s);
SheafMorphism restrict_morphism(const SheafMorphism& m, const Subspace& s);

/// Extension by zero along a closed inclusion (for down-sets this is the
/// pushforward). G lives on the induced subposet of Z.
Sheaf pushforward_closed(const Sheaf& g, const Poset& ambient, const Subspace& z);
SheafMorphism pushforward_closed(const SheafMorphism& m, const Poset& ambient, const Subspace& z);

/// Space of sections over an up-set V of the sheaf's own poset: the kernel
/// of the simultaneous compatibility constraints along covering relations
/// inside V. Basis columns give deterministic coordinates.
struct SectionSpace {
    std::vector<int> elements;  // ascending index order
    Matrix basis;               // (sum of stalk dims) x dim, kernel basis
    int dim() const { return basis.cols(); }
    /// Evaluation of sections at a member element: stalk(x) x dim.
    Matrix eval(const Sheaf& f, int x) const;
    /// Coordinates of a compatible family (throws model_error if not a section).
    Matrix coords(const Matrix& family_columns) const;
};
SectionSpace sections_over_up_set(const Sheaf& f, const std::vector<int>& up_set_members);

/// Fiber product of f: A -> C and g: B -> C, stalkwise pairs (a, b) with
/// f(a) = g(b). Projections are natural; the universal factoring map is
/// produced by the simultaneous solve.
struct FiberProduct {
    Sheaf total;
    SheafMorphism to_a;
    SheafMorphism to_b;
};
FiberProduct fiber_product(const SheafMorphism& f, const SheafMorphism& g);

/// Factor t through the fiber product of (f, g): unique u with
/// to_a o u = t_a and to_b o u = t_b; requires f o t_a = g o t_b.
SheafMorphism fiber_product_factor(const FiberProduct& fp, const SheafMorphism& t_a,
                                   const SheafMorphism& t_b);

/// Solve target_basis * x = vec columnwise; model_error when inconsistent.
Matrix express_in_basis(const Matrix& basis, const Matrix& vectors);

}  // namespace stratal

#endif
