#ifndef STRATAL_POSET_HPP
#define STRATAL_POSET_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stratal/rational.hpp"

namespace stratal {

/// Raised when user input violates a contract (unknown element, non-closed
/// subset passed where a closed one is required, malformed file, ...).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a mathematical consistency condition that the theory
/// guarantees fails to hold in the computed instance. Always a bug or a
/// misuse worth failing loudly on.
class model_error : public std::runtime_error {
public:
    explicit model_error(const std::string& what) : std::runtime_error(what) {}
};

struct PosetViolation {
    std::string kind;  // "irreflexivity" | "antisymmetry" | "transitivity"
    std::string detail;
};

/// Validate a raw relation before closure: irreflexive, antisymmetric,
/// transitive as given. The Poset constructor auto-closes instead; this is
/// the strict check for untrusted input.
std::optional<PosetViolation> validate_raw_relation(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& less_pairs,
    bool require_transitive = true);

/// Finite poset under the Alexandrov dictionary used throughout: open sets
/// are up-sets, the minimal open neighborhood of x is U_x = {y : y >= x},
/// and sheaf restriction maps point upward. Relations are stored strictly
/// (<) and transitively closed.
class Poset {
public:
    Poset() = default;
    /// Builds from any generating set of strict relations; closes
    /// transitively; throws input_error on reflexive or antisymmetric pairs.
    Poset(std::vector<std::string> elements,
          const std::vector<std::pair<std::string, std::string>>& less_pairs);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_[i]; }
    int index(const std::string& name) const;  // throws input_error if unknown

    bool less(int a, int b) const { return less_[a][b]; }
    bool leq(int a, int b) const { return a == b || less_[a][b]; }
    /// b covers a: a < b with nothing strictly between.
    bool covers(int a, int b) const;
    /// All covering pairs (a, b) with b covering a, lexicographic by index.
    const std::vector<std::pair<int, int>>& cover_pairs() const { return covers_; }
    std::vector<int> up_set(int x) const;  // U_x = {y : y >= x}

    bool is_up_set(const std::vector<int>& members) const;
    bool is_down_set(const std::vector<int>& members) const;

    /// Longest chain length (edges) within the given subset.
    int height(const std::vector<int>& members) const;

    /// All strictly increasing (k+1)-tuples inside `members`, emitted in
    /// lexicographic order of element names.
    std::vector<std::vector<int>> strict_chains(const std::vector<int>& members, int k) const;

    /// Indices in topological order (minimal elements first), ties broken
    /// by index; used for deterministic map composition.
    std::vector<int> topological_order() const;

    /// Connectivity of the comparability graph restricted to `members`.
    bool is_connected(const std::vector<int>& members) const;

    friend bool operator==(const Poset& a, const Poset& b) {
        return a.names_ == b.names_ && a.less_ == b.less_;
    }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<bool>> less_;
    std::vector<std::pair<int, int>> covers_;

    void rebuild_covers();
};

enum class SubsetKind { open, closed, neither, clopen };

/// A marked subset of a poset. `kind` is validated at construction when it
/// claims open or closed.
struct Subspace {
    std::vector<int> members;  // sorted ambient indices
    SubsetKind kind = SubsetKind::neither;

    static Subspace open_set(const Poset& p, std::vector<int> members);
    static Subspace closed_set(const Poset& p, std::vector<int> members);
    static Subspace arbitrary(std::vector<int> members);

    bool contains(int x) const;
};

SubsetKind classify_subset(const Poset& p, const std::vector<int>& members);

/// Complement within p, sorted.
std::vector<int> complement(const Poset& p, const std::vector<int>& members);

/// Induced subposet on `members`, keeping element names. Element order
/// follows the ambient index order.
Poset induced_subposet(const Poset& p, const std::vector<int>& members);

/// Sorted member indices from names.
std::vector<int> members_by_name(const Poset& p, const std::vector<std::string>& names);

}  // namespace stratal

#endif
