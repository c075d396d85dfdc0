#include <doctest.h>

#include "stratal/cftg.hpp"
#include "stratal/fixtures.hpp"

using namespace stratal;
namespace fx = stratal::fixtures;

namespace {

CftgContext disk_context() {
    StratifiedSpace x = fx::strat_disk();
    return make_context(x, fx::k_good(x.space), default_test_family(x, 1, 7));
}

}  // namespace

TEST_CASE("context records the perverse closed certificate") {
    CftgContext ctx = disk_context();
    CHECK(ctx.certificate.verdict);
    CHECK(ctx.certificate.tests_run >= 2);
}

TEST_CASE("triangle validation of canonical and broken objects") {
    CftgContext ctx = disk_context();

    // (A, F(A), id, T) and (A, G(A), T, id) always commute.
    PerverseOnX0 a = fx::perverse_circle_system(1);
    FgtData fgt = functor_fgt(ctx.x, ctx.k, a);
    CftgObject through_f = make_object(ctx, a, fgt.f_of_a,
                                       SheafMorphism::identity(fgt.f_of_a), fgt.t);
    CHECK(!validate_object(ctx, through_f).has_value());
    CftgObject through_g =
        make_object(ctx, a, fgt.g_of_a, fgt.t, SheafMorphism::identity(fgt.g_of_a));
    CHECK(!validate_object(ctx, through_g).has_value());

    // For the trivial system T = 0, so u = v = id violates the triangle.
    SheafMorphism idmap = SheafMorphism::identity(fgt.f_of_a);
    CftgObject broken = make_object(ctx, a, fgt.f_of_a, idmap, idmap);
    auto err = validate_object(ctx, broken);
    REQUIRE(err.has_value());
    CHECK(err->find("triangle fails") != std::string::npos);
}

TEST_CASE("kernel and cokernel of identity and zero") {
    CftgContext ctx = disk_context();
    Rng rng(5);
    CftgObject o = random_object(ctx, rng, 2);
    REQUIRE(!validate_object(ctx, o).has_value());

    CftgKernel k_id = kernel(ctx, o, o, identity_morphism(o));
    CHECK(k_id.object.a.ls.is_zero_sheaf());
    CHECK(k_id.object.b.is_zero_sheaf());
    CftgCokernel c_id = cokernel(ctx, o, o, identity_morphism(o));
    CHECK(c_id.object.a.ls.is_zero_sheaf());
    CHECK(c_id.object.b.is_zero_sheaf());

    CftgKernel k_zero = kernel(ctx, o, o, zero_morphism(o, o));
    CHECK(k_zero.object.a.ls.stalk == o.a.ls.stalk);
    CHECK(k_zero.object.b.stalk == o.b.stalk);
    CftgCokernel c_zero = cokernel(ctx, o, o, zero_morphism(o, o));
    CHECK(c_zero.object.a.ls.stalk == o.a.ls.stalk);
    CHECK(c_zero.object.b.stalk == o.b.stalk);
}

TEST_CASE("kernel of the sum map has the expected ranks") {
    CftgContext ctx = disk_context();
    // a: L_1 (+) L_1 -> L_1 the fold map, b = 0 between the B parts.
    PerverseOnX0 two{direct_sum(fx::circle_system(1), fx::circle_system(1)), -1};
    PerverseOnX0 one = fx::perverse_circle_system(1);
    FgtData fgt2 = functor_fgt(ctx.x, ctx.k, two);
    FgtData fgt1 = functor_fgt(ctx.x, ctx.k, one);
    CftgObject src = make_object(ctx, two, fgt2.f_of_a,
                                 SheafMorphism::identity(fgt2.f_of_a), fgt2.t);
    CftgObject tgt = make_object(ctx, one, fgt1.g_of_a, fgt1.t,
                                 SheafMorphism::identity(fgt1.g_of_a));
    CftgMorphism m = zero_morphism(src, tgt);
    for (int x = 0; x < src.a.ls.space.size(); ++x) {
        Matrix fold(1, 2);
        fold.at(0, 0) = Rational(1);
        fold.at(0, 1) = Rational(1);
        m.a_map.map.comp[x] = fold;
    }
    REQUIRE(!validate_morphism(ctx, src, tgt, m).has_value());
    CftgKernel k = kernel(ctx, src, tgt, m);
    CHECK(k.object.a.ls.stalk == std::vector<int>{1, 1, 1, 1});
    CHECK(k.object.b.stalk == src.b.stalk);

    CftgCokernel c = cokernel(ctx, src, tgt, m);
    CHECK(c.object.a.ls.is_zero_sheaf());
    CHECK(c.object.b.stalk == tgt.b.stalk);
}

TEST_CASE("universal properties on seeded random morphisms") {
    CftgContext ctx = disk_context();
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        CftgObject src = random_object(ctx, rng, 2);
        CftgObject tgt = random_object(ctx, rng, 2);
        CftgMorphism m = random_morphism(ctx, src, tgt, rng);
        REQUIRE(!validate_morphism(ctx, src, tgt, m).has_value());

        CftgKernel k = kernel(ctx, src, tgt, m);
        CftgCokernel c = cokernel(ctx, src, tgt, m);

        // Test cone through the kernel: any map into ker composed with the
        // mono must factor back uniquely.
        CftgObject probe = random_object(ctx, rng, 2);
        CftgMorphism into_ker = random_morphism(ctx, probe, k.object, rng);
        CftgMorphism t = compose(into_ker, k.mono);
        CftgMorphism factored =
            factor_through_kernel(ctx, probe, src, tgt, m, k, t);
        for (int x = 0; x < probe.b.space.size(); ++x)
            CHECK(factored.b_map.at(x) == into_ker.b_map.at(x));

        // Dual check through the cokernel.
        CftgMorphism from_cok = random_morphism(ctx, c.object, probe, rng);
        CftgMorphism t2 = compose(c.epi, from_cok);
        CftgMorphism factored2 =
            factor_through_cokernel(ctx, src, tgt, probe, m, c, t2);
        for (int x = 0; x < probe.b.space.size(); ++x)
            CHECK(factored2.b_map.at(x) == from_cok.b_map.at(x));
    }
}

TEST_CASE("image agrees with coimage on seeded morphisms") {
    CftgContext ctx = disk_context();
    Rng rng(77);
    for (int trial = 0; trial < 8; ++trial) {
        CftgObject src = random_object(ctx, rng, 2);
        CftgObject tgt = random_object(ctx, rng, 2);
        CftgMorphism m = random_morphism(ctx, src, tgt, rng);
        ImageCoimage cmp = image_coimage_compare(ctx, src, tgt, m);
        CHECK(cmp.iso);
    }
    // Identity and zero are the degenerate cases.
    CftgObject o = random_object(ctx, rng, 2);
    ImageCoimage ident = image_coimage_compare(ctx, o, o, identity_morphism(o));
    CHECK(ident.iso);
    CHECK(ident.image.b.stalk == o.b.stalk);
    ImageCoimage zero = image_coimage_compare(ctx, o, o, zero_morphism(o, o));
    CHECK(zero.iso);
    CHECK(zero.image.b.is_zero_sheaf());
    CHECK(zero.image.a.ls.is_zero_sheaf());
}

TEST_CASE("composition of morphisms satisfies the prisms") {
    CftgContext ctx = disk_context();
    Rng rng(13);
    CftgObject a = random_object(ctx, rng, 2);
    CftgObject b = random_object(ctx, rng, 2);
    CftgObject c = random_object(ctx, rng, 2);
    CftgMorphism f = random_morphism(ctx, a, b, rng);
    CftgMorphism g = random_morphism(ctx, b, c, rng);
    CHECK(!validate_morphism(ctx, a, c, compose(f, g)).has_value());
}

TEST_CASE("the zero object is initial and terminal") {
    CftgContext ctx = disk_context();
    CftgObject z = zero_object(ctx);
    CHECK(!validate_object(ctx, z).has_value());
    Rng rng(3);
    CftgObject o = random_object(ctx, rng, 2);
    // The only morphisms in either direction are zero.
    CHECK(natural_map_basis(z.a.ls, o.a.ls).empty());
    CHECK(natural_map_basis(o.b, z.b).empty());
    CHECK(!validate_morphism(ctx, z, o, zero_morphism(z, o)).has_value());
    CHECK(!validate_morphism(ctx, o, z, zero_morphism(o, z)).has_value());
}
