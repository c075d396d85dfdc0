#include "stratal/fixtures.hpp"

namespace stratal {
namespace fixtures {

Poset point() { return Poset({"x"}, {}); }

Poset segment() { return Poset({"x", "y"}, {{"x", "y"}}); }

Poset circle() {
    return Poset({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

Poset disk() {
    return Poset({"s", "a", "b", "c", "d"},
                 {{"s", "a"}, {"s", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

StratifiedSpace strat_disk() {
    Poset p = disk();
    return StratifiedSpace(p, members_by_name(p, {"s"}), 0, 1);
}

Subspace k_good(const Poset& disk_poset) {
    return Subspace::closed_set(disk_poset, members_by_name(disk_poset, {"s", "a"}));
}

Sheaf circle_system(const Matrix& holonomy) {
    if (!is_invertible(holonomy)) throw input_error("holonomy matrix must be invertible");
    Poset p = circle();
    int n = holonomy.rows();
    Sheaf f(p, std::vector<int>(4, n));
    for (auto [a, b] : p.cover_pairs()) f.rest[{a, b}] = Matrix::identity(n);
    f.rest[{p.index("b"), p.index("d")}] = holonomy;
    return f;
}

Sheaf circle_system(long lambda) {
    Matrix m(1, 1);
    m.at(0, 0) = Rational(lambda);
    return circle_system(m);
}

PerverseOnX0 perverse_circle_system(long lambda) {
    return PerverseOnX0{circle_system(lambda), -1};
}

PerverseOnX0 perverse_circle_system(const Matrix& holonomy) {
    return PerverseOnX0{circle_system(holonomy), -1};
}

SheafComplex rj_shifted_system(long lambda) {
    StratifiedSpace x = strat_disk();
    SheafComplex on_x0 = SheafComplex::single(circle_system(lambda), -1);
    return derived_pushforward_open(x.space, x.x0, on_x0);
}

SheafComplex ic1() { return truncate_le(rj_shifted_system(1), -1).complex; }

}  // namespace fixtures
}  // namespace stratal
