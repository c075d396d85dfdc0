#include "stratal/poset.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stratal {

namespace {

std::map<std::string, int> index_map(const std::vector<std::string>& names) {
    std::map<std::string, int> m;
    for (size_t i = 0; i < names.size(); ++i) {
        if (!m.emplace(names[i], static_cast<int>(i)).second)
            throw input_error("duplicate poset element: " + names[i]);
    }
    return m;
}

}  // namespace

std::optional<PosetViolation> validate_raw_relation(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& less_pairs,
    bool require_transitive) {
    auto idx = index_map(elements);
    int n = static_cast<int>(elements.size());
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : less_pairs) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end()) return PosetViolation{"unknown element", a};
        if (ib == idx.end()) return PosetViolation{"unknown element", b};
        if (ia->second == ib->second)
            return PosetViolation{"irreflexivity", a + " < " + a};
        rel[ia->second][ib->second] = true;
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (rel[a][b] && rel[b][a])
                return PosetViolation{"antisymmetry",
                                      elements[a] + " < " + elements[b] + " and " +
                                          elements[b] + " < " + elements[a]};
    if (require_transitive) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (rel[a][b] && rel[b][c] && !rel[a][c])
                        return PosetViolation{"transitivity",
                                              elements[a] + " < " + elements[b] + " < " +
                                                  elements[c] + " but not " + elements[a] +
                                                  " < " + elements[c]};
    }
    return std::nullopt;
}

Poset::Poset(std::vector<std::string> elements,
             const std::vector<std::pair<std::string, std::string>>& less_pairs)
    : names_(std::move(elements)) {
    auto idx = index_map(names_);
    int n = size();
    less_.assign(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : less_pairs) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end() || ib == idx.end())
            throw input_error("relation references unknown element: " + a + " < " + b);
        if (ia->second == ib->second) throw input_error("reflexive relation: " + a + " < " + b);
        less_[ia->second][ib->second] = true;
    }
    // Warshall closure.
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            if (less_[a][k])
                for (int b = 0; b < n; ++b)
                    if (less_[k][b]) less_[a][b] = true;
    for (int a = 0; a < n; ++a) {
        if (less_[a][a]) throw input_error("relation has a cycle through " + names_[a]);
        for (int b = 0; b < n; ++b)
            if (a != b && less_[a][b] && less_[b][a])
                throw input_error("antisymmetry violated: " + names_[a] + ", " + names_[b]);
    }
    rebuild_covers();
}

void Poset::rebuild_covers() {
    covers_.clear();
    int n = size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (!less_[a][b]) continue;
            bool covered = true;
            for (int m = 0; m < n && covered; ++m)
                if (less_[a][m] && less_[m][b]) covered = false;
            if (covered) covers_.emplace_back(a, b);
        }
}

int Poset::index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == name) return i;
    throw input_error("unknown element: " + name);
}

bool Poset::covers(int a, int b) const {
    if (!less_[a][b]) return false;
    for (int m = 0; m < size(); ++m)
        if (less_[a][m] && less_[m][b]) return false;
    return true;
}

std::vector<int> Poset::up_set(int x) const {
    std::vector<int> u;
    for (int y = 0; y < size(); ++y)
        if (leq(x, y)) u.push_back(y);
    return u;
}

bool Poset::is_up_set(const std::vector<int>& members) const {
    std::set<int> s(members.begin(), members.end());
    for (int x : members)
        for (int y = 0; y < size(); ++y)
            if (less(x, y) && !s.count(y)) return false;
    return true;
}

bool Poset::is_down_set(const std::vector<int>& members) const {
    std::set<int> s(members.begin(), members.end());
    for (int x : members)
        for (int y = 0; y < size(); ++y)
            if (less(y, x) && !s.count(y)) return false;
    return true;
}

int Poset::height(const std::vector<int>& members) const {
    int h = -1;
    for (int k = 0;; ++k) {
        if (strict_chains(members, k).empty()) break;
        h = k;
    }
    return h;
}

std::vector<std::vector<int>> Poset::strict_chains(const std::vector<int>& members, int k) const {
    // Candidates in name-lexicographic order so chains come out lex-sorted.
    std::vector<int> sorted = members;
    std::sort(sorted.begin(), sorted.end(),
              [&](int a, int b) { return names_[a] < names_[b]; });
    std::vector<std::vector<int>> out;
    std::vector<int> chain;
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(chain.size()) == k + 1) {
            out.push_back(chain);
            return;
        }
        for (int cand : sorted) {
            if (!chain.empty() && !less(chain.back(), cand)) continue;
            chain.push_back(cand);
            self(self);
            chain.pop_back();
        }
    };
    if (k >= 0) extend(extend);
    return out;
}

std::vector<int> Poset::topological_order() const {
    int n = size();
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    for (int step = 0; step < n; ++step) {
        for (int x = 0; x < n; ++x) {
            if (placed[x]) continue;
            bool minimal = true;
            for (int y = 0; y < n && minimal; ++y)
                if (!placed[y] && less(y, x)) minimal = false;
            if (minimal) {
                order.push_back(x);
                placed[x] = true;
                break;
            }
        }
    }
    return order;
}

bool Poset::is_connected(const std::vector<int>& members) const {
    if (members.empty()) return true;
    std::set<int> s(members.begin(), members.end());
    std::set<int> seen{members.front()};
    std::vector<int> stack{members.front()};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : members) {
            if (seen.count(y)) continue;
            if (less(x, y) || less(y, x)) {
                seen.insert(y);
                stack.push_back(y);
            }
        }
    }
    return seen.size() == s.size();
}

SubsetKind classify_subset(const Poset& p, const std::vector<int>& members) {
    for (int x : members)
        if (x < 0 || x >= p.size()) throw input_error("subset references unknown element index");
    bool up = p.is_up_set(members);
    bool down = p.is_down_set(members);
    if (up && down) return SubsetKind::clopen;
    if (up) return SubsetKind::open;
    if (down) return SubsetKind::closed;
    return SubsetKind::neither;
}

Subspace Subspace::open_set(const Poset& p, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    if (!p.is_up_set(members)) throw input_error("subset is not open (not an up-set)");
    return Subspace{std::move(members), SubsetKind::open};
}

Subspace Subspace::closed_set(const Poset& p, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    if (!p.is_down_set(members)) throw input_error("subset is not closed (not a down-set)");
    return Subspace{std::move(members), SubsetKind::closed};
}

Subspace Subspace::arbitrary(std::vector<int> members) {
    std::sort(members.begin(), members.end());
    return Subspace{std::move(members), SubsetKind::neither};
}

bool Subspace::contains(int x) const {
    return std::binary_search(members.begin(), members.end(), x);
}

std::vector<int> complement(const Poset& p, const std::vector<int>& members) {
    std::set<int> s(members.begin(), members.end());
    std::vector<int> out;
    for (int x = 0; x < p.size(); ++x)
        if (!s.count(x)) out.push_back(x);
    return out;
}

Poset induced_subposet(const Poset& p, const std::vector<int>& members) {
    std::vector<int> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::string> names;
    for (int x : sorted) names.push_back(p.name(x));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int a : sorted)
        for (int b : sorted)
            if (p.less(a, b)) pairs.emplace_back(p.name(a), p.name(b));
    return Poset(std::move(names), pairs);
}

std::vector<int> members_by_name(const Poset& p, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const auto& n : names) out.push_back(p.index(n));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace stratal
