#include <doctest.h>

#include "stratal/poset.hpp"

using namespace stratal;

namespace {

Poset circle() {
    return Poset({"a", "b", "c", "d"},
                 {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

Poset disk() {
    return Poset({"s", "a", "b", "c", "d"},
                 {{"s", "a"}, {"s", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

}  // namespace

TEST_CASE("raw relation validation") {
    CHECK(!validate_raw_relation({"x", "y"}, {{"x", "y"}}).has_value());
    auto anti = validate_raw_relation({"x", "y"}, {{"x", "y"}, {"y", "x"}});
    REQUIRE(anti.has_value());
    CHECK(anti->kind == "antisymmetry");
    auto trans = validate_raw_relation({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
    REQUIRE(trans.has_value());
    CHECK(trans->kind == "transitivity");
    // The loader closes the same input without complaint.
    Poset p({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
    CHECK(p.less(p.index("x"), p.index("z")));
}

TEST_CASE("classification of subsets of the disk") {
    Poset p = disk();
    CHECK(classify_subset(p, members_by_name(p, {"s", "a"})) == SubsetKind::closed);
    CHECK(classify_subset(p, members_by_name(p, {"b", "c", "d"})) == SubsetKind::open);
    CHECK(classify_subset(p, members_by_name(p, {"a", "c"})) == SubsetKind::neither);
    CHECK(classify_subset(p, {}) == SubsetKind::clopen);
    // Complement duality.
    for (unsigned mask = 0; mask < 32; ++mask) {
        std::vector<int> s;
        for (int i = 0; i < 5; ++i)
            if (mask & (1u << i)) s.push_back(i);
        auto k = classify_subset(p, s);
        auto kc = classify_subset(p, complement(p, s));
        if (k == SubsetKind::open) CHECK(kc == SubsetKind::closed);
        if (k == SubsetKind::closed) CHECK(kc == SubsetKind::open);
        if (k == SubsetKind::clopen) CHECK(kc == SubsetKind::clopen);
    }
}

TEST_CASE("strict chains on the circle model") {
    Poset p = circle();
    std::vector<int> all = {0, 1, 2, 3};
    auto c0 = p.strict_chains(all, 0);
    REQUIRE(c0.size() == 4);
    CHECK(p.name(c0[0][0]) == "a");
    auto c1 = p.strict_chains(all, 1);
    REQUIRE(c1.size() == 4);
    CHECK(p.name(c1[0][0]) == "a");
    CHECK(p.name(c1[0][1]) == "c");
    CHECK(p.name(c1[3][0]) == "b");
    CHECK(p.name(c1[3][1]) == "d");
    CHECK(p.strict_chains(all, 2).empty());
    CHECK(p.height(all) == 1);
    // Chains vanish above the height in general.
    Poset q = disk();
    std::vector<int> allq = {0, 1, 2, 3, 4};
    CHECK(q.height(allq) == 2);
    CHECK(q.strict_chains(allq, 3).empty());
}

TEST_CASE("induced subposet keeps names and order structure") {
    Poset p = disk();
    Poset sub = induced_subposet(p, members_by_name(p, {"b", "c", "d"}));
    CHECK(sub.size() == 3);
    CHECK(sub.less(sub.index("b"), sub.index("c")));
    CHECK(sub.less(sub.index("b"), sub.index("d")));
    CHECK(!sub.less(sub.index("c"), sub.index("d")));
    CHECK(sub.is_connected({0, 1, 2}));
}

TEST_CASE("subspace constructors check their kind") {
    Poset p = disk();
    CHECK_NOTHROW(Subspace::open_set(p, members_by_name(p, {"b", "c", "d"})));
    CHECK_THROWS_AS(Subspace::open_set(p, members_by_name(p, {"s"})), input_error);
    CHECK_NOTHROW(Subspace::closed_set(p, members_by_name(p, {"s"})));
    CHECK_THROWS_AS(Subspace::closed_set(p, members_by_name(p, {"c"})), input_error);
}

TEST_CASE("topological order puts minimal elements first") {
    Poset p = disk();
    auto order = p.topological_order();
    CHECK(p.name(order[0]) == "s");
    for (size_t i = 0; i < order.size(); ++i)
        for (size_t j = i + 1; j < order.size(); ++j) CHECK(!p.less(order[j], order[i]));
}
