#include "stratal/perverse.hpp"

#include <algorithm>

#include "stratal/rng.hpp"

namespace stratal {

StratifiedSpace::StratifiedSpace(Poset space_, std::vector<int> s_members, int d_, int c_)
    : space(std::move(space_)), d(d_), c(c_) {
    s = Subspace::closed_set(space, s_members);
    x0 = Subspace::open_set(space, complement(space, s.members));
    if (!space.is_connected(s.members))
        throw input_error("the closed stratum must be connected");
    if (c <= d)
        throw input_error("perversity degree c must exceed the stratum dimension d");
}

PerversityReport is_perverse(const StratifiedSpace& x, const SheafComplex& c) {
    if (auto err = c.validate()) throw input_error("complex invalid: " + *err);
    PerversityReport report;
    report.verdict = true;
    SheafComplex on_x0 = restrict_complex(c, x.x0);
    SheafComplex on_s = restrict_complex(c, x.s);

    // Constructibility for (S, X0): locally constant cohomology stratumwise.
    for (int k = on_x0.min_degree(); k <= on_x0.max_degree(); ++k)
        if (!cohomology_sheaf(on_x0, k).is_local_system())
            throw input_error("not constructible: H^" + std::to_string(k) +
                              " is not locally constant on X0");
    for (int k = on_s.min_degree(); k <= on_s.max_degree(); ++k)
        if (!cohomology_sheaf(on_s, k).is_local_system())
            throw input_error("not constructible: H^" + std::to_string(k) +
                              " is not locally constant on S");

    for (int k = on_x0.min_degree(); k <= on_x0.max_degree(); ++k) {
        if (k == -x.c) continue;
        if (!cohomology_sheaf(on_x0, k).is_zero_sheaf()) {
            report.verdict = false;
            report.failures.push_back("restriction to X0 has cohomology in degree " +
                                      std::to_string(k) + " != " + std::to_string(-x.c));
        }
    }
    for (int k = std::max(on_s.min_degree(), -x.d + 1); k <= on_s.max_degree(); ++k) {
        if (!cohomology_sheaf(on_s, k).is_zero_sheaf()) {
            report.verdict = false;
            report.failures.push_back("stalk cohomology on S in degree " + std::to_string(k) +
                                      " > " + std::to_string(-x.d));
        }
    }
    GammaClosed tri = gamma_closed(x.space, x.s, c);
    SheafComplex gk_on_s = restrict_complex(tri.gamma_k, x.s);
    for (int k = gk_on_s.min_degree(); k <= std::min(gk_on_s.max_degree(), -x.d - 1); ++k) {
        if (!cohomology_sheaf(gk_on_s, k).is_zero_sheaf()) {
            report.verdict = false;
            report.failures.push_back("local cohomology along S in degree " + std::to_string(k) +
                                      " < " + std::to_string(-x.d));
        }
    }
    return report;
}

PerverseClosedReport is_perverse_closed(const StratifiedSpace& x, const Subspace& k,
                                        const std::vector<PerverseOnX0>& tests) {
    if (tests.empty()) throw input_error("perverse closed check needs a nonempty test family");
    if (!x.space.is_down_set(k.members)) throw input_error("candidate K must be closed");
    PerverseClosedReport report;
    report.candidate = k.members;
    report.tests_run = static_cast<int>(tests.size());

    // Necessary condition: the complement may not meet S, i.e. S lies in K.
    for (int s_elt : x.s.members) {
        if (!std::binary_search(k.members.begin(), k.members.end(), s_elt)) {
            report.verdict = false;
            report.witnesses.push_back(PerverseClosedWitness{-1, "pre-filter", 0, 0});
            return report;
        }
    }

    for (size_t i = 0; i < tests.size(); ++i) {
        SheafComplex rj = derived_pushforward_open(x.space, x.x0, tests[i].as_complex());
        GammaClosed tri = gamma_closed(x.space, k, rj);
        for (int deg = tri.gamma_k.min_degree(); deg <= std::min(tri.gamma_k.max_degree(), -x.d - 1);
             ++deg) {
            Sheaf h = cohomology_sheaf(tri.gamma_k, deg);
            if (!h.is_zero_sheaf())
                report.witnesses.push_back(
                    PerverseClosedWitness{static_cast<int>(i), "K", deg, h.total_dim()});
        }
        for (int deg = std::max(tri.gamma_l.min_degree(), -x.d); deg <= tri.gamma_l.max_degree();
             ++deg) {
            Sheaf h = cohomology_sheaf(tri.gamma_l, deg);
            if (!h.is_zero_sheaf())
                report.witnesses.push_back(
                    PerverseClosedWitness{static_cast<int>(i), "L", deg, h.total_dim()});
        }
    }
    report.verdict = report.witnesses.empty();
    return report;
}

std::vector<PerverseOnX0> default_test_family(const StratifiedSpace& x, int max_rank,
                                              uint64_t seed) {
    if (max_rank < 1) throw input_error("max_rank must be at least 1");
    Poset x0 = x.x0_poset();
    Rng rng(seed);
    std::vector<PerverseOnX0> family;
    for (int r = 1; r <= max_rank; ++r)
        family.push_back(PerverseOnX0{Sheaf::constant(x0, r), -x.c});
    // Single-edge twists; kept only when they satisfy the sheaf axioms (on
    // models with commutation constraints most twists drop out and the
    // family degenerates to the constant systems).
    for (int r = 1; r <= max_rank; ++r) {
        int placed = 0;
        for (auto [a, b] : x0.cover_pairs()) {
            if (placed >= 2) break;
            Matrix m = rng.invertible(r);
            if (m.is_identity()) {
                Matrix bump = Matrix::identity(r);
                bump.at(0, 0) = Rational(2);
                m = m * bump;
            }
            Sheaf twist = Sheaf::constant(x0, r);
            twist.rest[{a, b}] = m;
            if (twist.validate().has_value()) continue;
            family.push_back(PerverseOnX0{std::move(twist), -x.c});
            ++placed;
        }
    }
    return family;
}

SheafMorphism connecting_on_h(const GammaClosed& tri, const CohomologyData& h_l,
                              const CohomologyData& h_k, int d_low) {
    // Cycles of gamma_l in degree d_low map to cycles of gamma_k in degree
    // d_low + 1 (the shift in the connecting map only flips differentials).
    SheafMorphism out(h_l.h, h_k.h);
    for (int p = 0; p < h_l.h.space.size(); ++p) {
        Matrix moved = tri.connecting.comp(d_low).at(p) * h_l.include[p];
        out.comp[p] = h_k.project(p, moved);
    }
    return out;
}

FgtData functor_fgt(const StratifiedSpace& x, const Subspace& k, const PerverseOnX0& a) {
    FgtData out;
    out.rj = derived_pushforward_open(x.space, x.x0, a.as_complex());
    out.triangle = gamma_closed(x.space, k, out.rj);
    out.h_l = cohomology_data(out.triangle.gamma_l, -x.d - 1);
    out.h_k = cohomology_data(out.triangle.gamma_k, -x.d);
    out.connecting_h = connecting_on_h(out.triangle, out.h_l, out.h_k, -x.d - 1);

    out.f_of_a = restrict_sheaf(out.h_l.h, x.s);
    out.g_of_a = restrict_sheaf(out.h_k.h, x.s);
    out.t = restrict_morphism(out.connecting_h, x.s);
    if (!out.f_of_a.is_local_system() || !out.g_of_a.is_local_system())
        throw model_error("F(A) or G(A) is not locally constant; K is not a perverse closed set "
                          "for this family");
    return out;
}

FgtMaps functor_fgt_map(const StratifiedSpace& x, const Subspace& k, const PerverseMapOnX0& a,
                        const FgtData& source, const FgtData& target) {
    ChainMap rj_map = derived_pushforward_open_map(x.space, x.x0, a.as_chain_map());
    Subspace l = Subspace::open_set(x.space, complement(x.space, k.members));
    ChainMap l_map = gamma_open_map(x.space, l, rj_map);
    ChainMap k_map = gamma_closed_map(x.space, k, rj_map);

    SheafMorphism f_on_x(source.h_l.h, target.h_l.h);
    SheafMorphism g_on_x(source.h_k.h, target.h_k.h);
    for (int p = 0; p < x.space.size(); ++p) {
        f_on_x.comp[p] =
            target.h_l.project(p, l_map.comp(-x.d - 1).at(p) * source.h_l.include[p]);
        g_on_x.comp[p] = target.h_k.project(p, k_map.comp(-x.d).at(p) * source.h_k.include[p]);
    }
    return FgtMaps{restrict_morphism(f_on_x, x.s), restrict_morphism(g_on_x, x.s)};
}

}  // namespace stratal
