// Acceptance suite: one criterion per section, one PASS/FAIL line each, all
// on the disk fixture library with exact arithmetic (every comparison is an
// equality; there are no tolerances to tune).

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "stratal/equivalence.hpp"
#include "stratal/fixtures.hpp"
#include "testkit.hpp"

using namespace stratal;
namespace fx = stratal::fixtures;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" [exception: ") + e.what() + "]";
    }
    long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("%s criterion %d: %s (%ld ms)%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                ms, note.c_str());
    if (!ok) ++failures;
}

SheafComplex extension_by_zero(const StratifiedSpace& x, long lambda) {
    Subspace s = x.s;
    GluingTriple t;
    t.closed_part = s;
    t.on_closed = Sheaf(induced_subposet(x.space, s.members), {0});
    t.on_open = fx::circle_system(lambda);
    t.glue = SheafMorphism(t.on_closed, triple_glue_target(x.space, s, t.on_open));
    return SheafComplex::single(gluing_functor(x.space, t).sheaf, -1);
}

}  // namespace

int main() {
    StratifiedSpace x = fx::strat_disk();
    const Poset& disk = x.space;
    Subspace k_good = fx::k_good(disk);
    Subspace s_sub = x.s;

    // 1. Gluing equivalence: round-trip isomorphisms on 100 seeded random
    //    constructible triples (ranks <= 3), naturality on 50 seeded triple
    //    morphisms.
    criterion(1, "gluing equivalence round trips and naturality", [&] {
        Rng rng(1);
        for (int trial = 0; trial < 100; ++trial) {
            GluingTriple t = testkit::random_triple(disk, rng, 3);
            if (validate_triple(disk, t)) return false;
            GluedSheaf g = gluing_functor(disk, t);
            QuasiInverseWitnesses w = quasi_inverse_witnesses(disk, s_sub, g.sheaf, t);
            if (!w.glue_restrict_to_id.is_iso()) return false;
            if (!w.restrict_glue_to_id.closed_map.is_iso()) return false;
            if (!w.restrict_glue_to_id.open_map.is_iso()) return false;
        }
        // Naturality: the round-trip witness intertwines triple morphisms,
        // i.e. w_t2 o RF(GF(m)) = m o w_t componentwise.
        Rng rng2(2);
        for (int trial = 0; trial < 50; ++trial) {
            GluingTriple t = testkit::random_triple(disk, rng2, 3);
            GluingTriple t2;
            TripleMorphism m = testkit::random_triple_morphism(disk, rng2, t, t2, 3);
            if (validate_triple_morphism(disk, t, t2, m)) return false;
            GluedSheaf g = gluing_functor(disk, t);
            GluedSheaf g2 = gluing_functor(disk, t2);
            SheafMorphism glued = gluing_functor_map(disk, t, t2, m);
            QuasiInverseWitnesses w = quasi_inverse_witnesses(disk, s_sub, g.sheaf, t);
            QuasiInverseWitnesses w2 = quasi_inverse_witnesses(disk, s_sub, g2.sheaf, t2);
            TripleMorphism rgm = restriction_functor_map(disk, s_sub, glued);
            SheafMorphism lhs_c = rgm.closed_map.then(w2.restrict_glue_to_id.closed_map);
            SheafMorphism rhs_c = w.restrict_glue_to_id.closed_map.then(m.closed_map);
            SheafMorphism lhs_o = rgm.open_map.then(w2.restrict_glue_to_id.open_map);
            SheafMorphism rhs_o = w.restrict_glue_to_id.open_map.then(m.open_map);
            for (int p = 0; p < lhs_c.source.space.size(); ++p)
                if (!(lhs_c.at(p) == rhs_c.at(p))) return false;
            for (int p = 0; p < lhs_o.source.space.size(); ++p)
                if (!(lhs_o.at(p) == rhs_o.at(p))) return false;
        }
        return true;
    });

    // 2. Perverse closed sets: the good candidate passes, the two bad ones
    //    fail with the expected witnesses, the Remark pre-filter rejects
    //    everything missing S, and local cohomology of perverse fixtures
    //    concentrates in degree -d.
    criterion(2, "perverse closed set verdicts and witnesses", [&] {
        auto family = default_test_family(x, 3, 7);
        if (!is_perverse_closed(x, k_good, family).verdict) return false;

        Subspace k_point = Subspace::closed_set(disk, members_by_name(disk, {"s"}));
        PerverseClosedReport bad = is_perverse_closed(x, k_point, family);
        bool witness_l = false;
        for (const auto& w : bad.witnesses)
            if (w.side == "L" && w.degree == 0 && w.dimension == 1) witness_l = true;
        if (bad.verdict || !witness_l) return false;

        Subspace k_all = Subspace::closed_set(disk, {0, 1, 2, 3, 4});
        PerverseClosedReport bad2 = is_perverse_closed(x, k_all, family);
        bool witness_k = false;
        for (const auto& w : bad2.witnesses)
            if (w.side == "K" && w.degree == -1) witness_k = true;
        if (bad2.verdict || !witness_k) return false;

        auto small_family = default_test_family(x, 1, 3);
        for (unsigned mask = 0; mask < 32; ++mask) {
            std::vector<int> members;
            for (int i = 0; i < 5; ++i)
                if (mask & (1u << i)) members.push_back(i);
            if (!disk.is_down_set(members)) continue;
            bool contains_s =
                std::binary_search(members.begin(), members.end(), disk.index("s"));
            if (contains_s) continue;
            PerverseClosedReport rep =
                is_perverse_closed(x, Subspace::closed_set(disk, members), small_family);
            if (rep.verdict || rep.witnesses.empty() ||
                rep.witnesses[0].side != "pre-filter")
                return false;
        }

        std::vector<SheafComplex> perverse_fixtures = {
            SheafComplex::single(Sheaf::skyscraper(disk, "s", 1), 0),
            fx::ic1(),
            fx::rj_shifted_system(1),
            fx::rj_shifted_system(2),
            extension_by_zero(x, 1),
        };
        for (const auto& f : perverse_fixtures) {
            if (!is_perverse(x, f).verdict) return false;
            GammaClosed tri = gamma_closed(disk, k_good, f);
            for (int deg = tri.gamma_k.min_degree(); deg <= tri.gamma_k.max_degree(); ++deg) {
                if (deg == -x.d) continue;
                if (!cohomology_sheaf(tri.gamma_k, deg).is_zero_sheaf()) return false;
            }
            for (int deg = std::max(tri.gamma_l.min_degree(), -x.d);
                 deg <= tri.gamma_l.max_degree(); ++deg)
                if (!cohomology_sheaf(tri.gamma_l, deg).is_zero_sheaf()) return false;
        }
        return true;
    });

    // 3. F/G/T dimensions against the independent holonomy-defect oracle.
    criterion(3, "F, G, T dimensions match rank(M - 1) on 20 seeded samples", [&] {
        Rng rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            int n = rng.range(1, 4);
            Matrix m = rng.invertible(n);
            FgtData data = functor_fgt(x, k_good, fx::perverse_circle_system(m));
            if (data.f_of_a.stalk != std::vector<int>{n}) return false;
            if (data.g_of_a.stalk != std::vector<int>{n}) return false;
            if (rank(data.t.at(0)) != rank(m - Matrix::identity(n))) return false;
        }
        return true;
    });

    CftgContext ctx = make_context(x, k_good, default_test_family(x, 2, 7));

    // 4. Abelianness of the quadruple category: solver-verified universal
    //    properties for kernels and cokernels, image = coimage.
    criterion(4, "kernels/cokernels of 50 seeded morphisms with image = coimage", [&] {
        Rng rng(4);
        for (int trial = 0; trial < 50; ++trial) {
            CftgObject src = random_object(ctx, rng, 3);
            CftgObject tgt = random_object(ctx, rng, 3);
            CftgMorphism m = random_morphism(ctx, src, tgt, rng);
            if (validate_morphism(ctx, src, tgt, m)) return false;
            CftgKernel ker = kernel(ctx, src, tgt, m);
            CftgCokernel cok = cokernel(ctx, src, tgt, m);
            // Universal property probes.
            CftgObject probe = random_object(ctx, rng, 2);
            CftgMorphism into_ker = random_morphism(ctx, probe, ker.object, rng);
            CftgMorphism through = compose(into_ker, ker.mono);
            CftgMorphism back = factor_through_kernel(ctx, probe, src, tgt, m, ker, through);
            for (int p = 0; p < probe.b.space.size(); ++p)
                if (!(back.b_map.at(p) == into_ker.b_map.at(p))) return false;
            CftgMorphism from_cok = random_morphism(ctx, cok.object, probe, rng);
            CftgMorphism through2 = compose(cok.epi, from_cok);
            CftgMorphism back2 =
                factor_through_cokernel(ctx, src, tgt, probe, m, cok, through2);
            for (int p = 0; p < probe.b.space.size(); ++p)
                if (!(back2.b_map.at(p) == from_cok.b_map.at(p))) return false;
            ImageCoimage cmp = image_coimage_compare(ctx, src, tgt, m);
            if (!cmp.iso) return false;
        }
        return true;
    });

    // 5 and 6 share the seeded object family.
    std::vector<CftgObject> objects;
    {
        Rng rng(5);
        for (int trial = 0; trial < 100; ++trial) objects.push_back(random_object(ctx, rng, 3));
    }
    std::vector<PFunctorResult> p_images;

    // 5. P takes values in the perverse category, restricting on X0 to the
    //    input system: concentrated in degree -c with an invertible natural
    //    map onto the input (seeded search over the natural map space).
    criterion(5, "functor P is perverse on 100 seeded objects", [&] {
        Rng rng(55);
        for (const auto& o : objects) {
            PFunctorResult p = functor_p(ctx, o);  // throws when not perverse
            SheafComplex on_x0 = restrict_complex(p.complex(), x.x0);
            for (int deg = on_x0.min_degree(); deg <= on_x0.max_degree(); ++deg) {
                Sheaf h = cohomology_sheaf(on_x0, deg);
                if (deg == -x.c) {
                    if (h.stalk != o.a.ls.stalk || !h.is_local_system()) return false;
                    auto basis = natural_map_basis(h, o.a.ls);
                    bool iso_found = h.total_dim() == 0;
                    for (int attempt = 0; attempt < 24 && !iso_found; ++attempt) {
                        SheafMorphism candidate(h, o.a.ls);
                        for (const auto& e : basis) {
                            Rational coeff = rng.rational(-3, 3);
                            for (int pt = 0; pt < h.space.size(); ++pt)
                                candidate.comp[pt] =
                                    candidate.at(pt) + e.at(pt).scaled(coeff);
                        }
                        iso_found = candidate.is_iso();
                    }
                    if (!iso_found) return false;
                } else if (!h.is_zero_sheaf()) {
                    return false;
                }
            }
            p_images.push_back(std::move(p));
        }
        return true;
    });

    // 6. The quasi-inverse property: explicit isomorphisms of quadruples for
    //    C o P on the same 100 objects; explicit quasi-isomorphism zig-zags
    //    for P o C on the perverse fixture set and 50 seeded P images.
    criterion(6, "quasi-inverse round trips (100 CP isos, fixtures + 50 PC zig-zags)", [&] {
        for (const auto& o : objects) {
            CpRoundTrip rt = roundtrip_cp(ctx, o);
            if (!rt.iso.a_map.map.is_iso() || !rt.iso.b_map.is_iso()) return false;
            if (validate_morphism(ctx, rt.cp.object, o, rt.iso)) return false;
        }
        std::vector<SheafComplex> perverse_fixtures = {
            SheafComplex::single(Sheaf::skyscraper(disk, "s", 1), 0),
            fx::ic1(),
            fx::rj_shifted_system(1),
            fx::rj_shifted_system(2),
            fx::rj_shifted_system(-1),
            extension_by_zero(x, 1),
        };
        for (const auto& f : perverse_fixtures) {
            PcRoundTrip rt = roundtrip_pc(ctx, f);
            if (!rt.zigzag.all_quasi_iso) return false;
            if (!(rt.zigzag.arrows.back().target == f)) return false;
        }
        for (size_t i = 0; i < 50 && i < p_images.size(); ++i) {
            PcRoundTrip rt = roundtrip_pc(ctx, p_images[i].complex());
            if (!rt.zigzag.all_quasi_iso) return false;
        }
        return true;
    });

    // 7. The fill-in solver on 50 seeded square instances where both
    //    Hom-vanishing hypotheses hold (and are certified by the solver):
    //    a fill-in exists, its class is unique, and it recovers the map the
    //    square was built from.
    criterion(7, "fill-in exists and is homotopy-unique on 50 seeded squares", [&] {
        Rng rng(7);
        Poset x0 = x.x0_poset();
        int nonzero_squares = 0;
        // Terms are sums of shared building blocks (constants and one fixed
        // twist) so the instances carry plenty of natural maps.
        auto random_block_sheaf = [&] {
            Sheaf out = rng.below(3) == 0 ? fx::circle_system(2)
                                          : Sheaf::constant(x0, rng.range(1, 2));
            if (rng.below(2) == 0)
                out = direct_sum(out, rng.below(3) == 0 ? fx::circle_system(2)
                                                        : Sheaf::constant(x0, 1));
            return out;
        };
        // Random two-term complex in degrees {-1, 0} with natural
        // differential.
        auto random_two_term = [&] {
            Sheaf low = random_block_sheaf();
            Sheaf high = random_block_sheaf();
            SheafComplex c(x0);
            c.set_term(-1, low);
            c.set_term(0, high);
            auto basis = natural_map_basis(low, high);
            SheafMorphism d(low, high);
            for (const auto& e : basis) {
                Rational coeff = rng.rational(-2, 2);
                for (int p = 0; p < x0.size(); ++p) d.comp[p] = d.at(p) + e.at(p).scaled(coeff);
            }
            c.set_diff(-1, d);
            return c;
        };
        // Contractible two-term complex: identity differential.
        auto contractible = [&] {
            Sheaf r = random_block_sheaf();
            SheafComplex c(x0);
            c.set_term(-1, r);
            c.set_term(0, r);
            c.set_diff(-1, SheafMorphism::identity(r));
            return c;
        };
        // u: A -> B by picking the top component and chasing the square.
        auto random_map_into = [&](const SheafComplex& a, const SheafComplex& b) {
            ChainMap u(a, b);
            auto basis = natural_map_basis(a.term(0), b.term(0));
            SheafMorphism top(a.term(0), b.term(0));
            for (const auto& e : basis) {
                Rational coeff = rng.rational(-1, 1);
                for (int p = 0; p < x0.size(); ++p)
                    top.comp[p] = top.at(p) + e.at(p).scaled(coeff);
            }
            // bottom = d_B^{-1} o ... : with identity differential on B the
            // chain square forces bottom = top o d_A.
            SheafMorphism bottom(a.term(-1), b.term(-1));
            SheafMorphism chased = a.diff(-1).then(top);
            for (int p = 0; p < x0.size(); ++p) bottom.comp[p] = chased.at(p);
            u.set_comp(0, top);
            u.set_comp(-1, bottom);
            return u;
        };
        // Strictly commuting pair (alpha0, beta) over (u, u'): solved as the
        // kernel of the combined naturality/chain/square system, then a
        // seeded combination.
        auto random_square = [&](const ChainMap& u, const ChainMap& u_prime, ChainMap& alpha0,
                                 ChainMap& beta) {
            const SheafComplex& a = u.source;
            const SheafComplex& a2 = u_prime.source;
            const SheafComplex& b = u.target;
            const SheafComplex& b2 = u_prime.target;
            auto ea_low = natural_map_basis(a.term(-1), a2.term(-1));
            auto ea_high = natural_map_basis(a.term(0), a2.term(0));
            auto eb_low = natural_map_basis(b.term(-1), b2.term(-1));
            auto eb_high = natural_map_basis(b.term(0), b2.term(0));
            int na = static_cast<int>(ea_low.size()), nb = static_cast<int>(ea_high.size());
            int nc = static_cast<int>(eb_low.size()), nd = static_cast<int>(eb_high.size());
            // Rows: chain squares for alpha and beta, then the two strict
            // commutation squares, all stalkwise.
            std::vector<std::vector<Rational>> rows;
            auto add_block = [&](const std::vector<SheafMorphism>& left_basis, int left_off,
                                 const std::vector<SheafMorphism>& right_basis, int right_off,
                                 const std::function<Matrix(const SheafMorphism&)>& lmat,
                                 const std::function<Matrix(const SheafMorphism&)>& rmat,
                                 int total) {
                if (left_basis.empty() && right_basis.empty()) return;
                Matrix probe = !left_basis.empty() ? lmat(left_basis[0]) : rmat(right_basis[0]);
                for (int p = 0; p < probe.rows(); ++p)
                    for (int q = 0; q < probe.cols(); ++q) {
                        std::vector<Rational> row(total);
                        for (size_t i = 0; i < left_basis.size(); ++i)
                            row[left_off + i] = lmat(left_basis[i]).at(p, q);
                        for (size_t i = 0; i < right_basis.size(); ++i)
                            row[right_off + i] = -rmat(right_basis[i]).at(p, q);
                        rows.push_back(std::move(row));
                    }
            };
            int total = na + nb + nc + nd;
            for (int p = 0; p < x0.size(); ++p) {
                // d' alpha_low = alpha_high d
                add_block(ea_low, 0, ea_high, na,
                          [&](const SheafMorphism& e) { return a2.diff(-1).at(p) * e.at(p); },
                          [&](const SheafMorphism& e) { return e.at(p) * a.diff(-1).at(p); },
                          total);
                // beta chain square
                add_block(eb_low, na + nb, eb_high, na + nb + nc,
                          [&](const SheafMorphism& e) { return b2.diff(-1).at(p) * e.at(p); },
                          [&](const SheafMorphism& e) { return e.at(p) * b.diff(-1).at(p); },
                          total);
                // beta_low u_low = u'_low alpha_low
                add_block(eb_low, na + nb, ea_low, 0,
                          [&](const SheafMorphism& e) { return e.at(p) * u.comp(-1).at(p); },
                          [&](const SheafMorphism& e) {
                              return u_prime.comp(-1).at(p) * e.at(p);
                          },
                          total);
                // beta_high u_high = u'_high alpha_high
                add_block(eb_high, na + nb + nc, ea_high, na,
                          [&](const SheafMorphism& e) { return e.at(p) * u.comp(0).at(p); },
                          [&](const SheafMorphism& e) {
                              return u_prime.comp(0).at(p) * e.at(p);
                          },
                          total);
            }
            Matrix sys(static_cast<int>(rows.size()), total);
            for (size_t r = 0; r < rows.size(); ++r)
                for (int c = 0; c < total; ++c) sys.at(static_cast<int>(r), c) = rows[r][c];
            Matrix sol = kernel_basis(sys);
            std::vector<Rational> coeff(total);
            for (int col = 0; col < sol.cols(); ++col) {
                Rational w = rng.rational(-1, 1);
                for (int i = 0; i < total; ++i) coeff[i] += w * sol.at(i, col);
            }
            alpha0 = ChainMap(a, a2);
            beta = ChainMap(b, b2);
            SheafMorphism al(a.term(-1), a2.term(-1)), ah(a.term(0), a2.term(0));
            SheafMorphism bl(b.term(-1), b2.term(-1)), bh(b.term(0), b2.term(0));
            for (size_t i = 0; i < ea_low.size(); ++i)
                for (int p = 0; p < x0.size(); ++p)
                    al.comp[p] = al.at(p) + ea_low[i].at(p).scaled(coeff[i]);
            for (size_t i = 0; i < ea_high.size(); ++i)
                for (int p = 0; p < x0.size(); ++p)
                    ah.comp[p] = ah.at(p) + ea_high[i].at(p).scaled(coeff[na + i]);
            for (size_t i = 0; i < eb_low.size(); ++i)
                for (int p = 0; p < x0.size(); ++p)
                    bl.comp[p] = bl.at(p) + eb_low[i].at(p).scaled(coeff[na + nb + i]);
            for (size_t i = 0; i < eb_high.size(); ++i)
                for (int p = 0; p < x0.size(); ++p)
                    bh.comp[p] = bh.at(p) + eb_high[i].at(p).scaled(coeff[na + nb + nc + i]);
            alpha0.set_comp(-1, al);
            alpha0.set_comp(0, ah);
            beta.set_comp(-1, bl);
            beta.set_comp(0, bh);
        };

        for (int trial = 0; trial < 50; ++trial) {
            SheafComplex a = random_two_term();
            SheafComplex a2 = random_two_term();
            SheafComplex b = contractible();
            SheafComplex b2 = contractible();
            ChainMap u = random_map_into(a, b);
            ChainMap u2 = random_map_into(a2, b2);
            if (u.validate() || u2.validate()) return false;
            ChainMap alpha0, beta;
            random_square(u, u2, alpha0, beta);
            if (alpha0.validate() || beta.validate()) return false;
            Cone cu = cone(u);
            Cone cu2 = cone(u2);
            ChainMap gamma = cone_map(cu, cu2, alpha0, beta);
            if (gamma.validate()) return false;
            FillInResult fill = fill_in(u, u2, beta, gamma);
            if (!fill.unique) return false;
            if (fill.homotopy.validate()) return false;
            // Uniqueness in action: the solver lands in the class of the map
            // the square was built from.
            if (!find_homotopy(fill.alpha, alpha0)) return false;
            bool nz = false;
            for (const auto& [k, comp] : alpha0.comps)
                if (!comp.is_zero()) nz = true;
            nonzero_squares += nz;
        }
        // The family must genuinely exercise the solver.
        return nonzero_squares >= 20;
    });

    // 8. Derived-functor sanity: circle stalks of the pushforward, and the
    //    augmentation quasi-isomorphism on every fixture system.
    criterion(8, "pushforward stalks and augmentation units", [&] {
        int s_idx = disk.index("s");
        SheafComplex rj1 = derived_pushforward_open(
            disk, x.x0, SheafComplex::single(fx::circle_system(1), 0));
        if (cohomology_sheaf(rj1, 0).stalk[s_idx] != 1) return false;
        if (cohomology_sheaf(rj1, 1).stalk[s_idx] != 1) return false;
        for (long lambda : {2L, -1L}) {
            SheafComplex rj = derived_pushforward_open(
                disk, x.x0, SheafComplex::single(fx::circle_system(lambda), 0));
            if (cohomology_sheaf(rj, 0).stalk[s_idx] != 0) return false;
            if (cohomology_sheaf(rj, 1).stalk[s_idx] != 0) return false;
        }
        Matrix unipotent(2, 2);
        unipotent.at(0, 0) = Rational(1);
        unipotent.at(0, 1) = Rational(1);
        unipotent.at(1, 1) = Rational(1);
        std::vector<Sheaf> systems = {fx::circle_system(1), fx::circle_system(2),
                                      fx::circle_system(-1), fx::circle_system(unipotent)};
        for (const auto& sys : systems)
            for (int deg : {0, -1}) {
                ChainMap aug =
                    bar_augmentation(disk, x.x0, SheafComplex::single(sys, deg));
                if (!is_quasi_iso(aug)) return false;
            }
        // U = X: the adjunction unit itself.
        Subspace whole = Subspace::open_set(disk, {0, 1, 2, 3, 4});
        ChainMap unit = adjunction_unit(
            disk, whole, SheafComplex::single(Sheaf::constant(disk, 2), 0));
        return is_quasi_iso(unit);
    });

    std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "OK", failures);
    return failures ? 1 : 0;
}
