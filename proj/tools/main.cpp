// stratal: exact-arithmetic checks for two-strata perverse gluing on finite
// poset models. Batch interface: every subcommand reads a space file (or the
// built-in disk model), runs one family of checks, and emits a report with a
// machine-readable section. Exit codes: 0 pass, 1 mathematical failure,
// 2 usage or input error.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

#include "stratal/equivalence.hpp"
#include "stratal/fixtures.hpp"
#include "stratal/report.hpp"
#include "stratal/spacefile.hpp"

using namespace stratal;
using nlohmann::ordered_json;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

ParsedSpace resolve_space(const std::string& spec) {
    if (spec == "builtin:disk") return builtin_disk_space();
    return load_space_file(spec);
}

/// A closed-set spec is either a name from the file or a comma-separated
/// element list.
Subspace resolve_closed(const ParsedSpace& ps, const std::string& spec) {
    auto it = ps.closed_sets.find(spec);
    if (it != ps.closed_sets.end()) return it->second;
    std::vector<std::string> names;
    std::string cur;
    for (char c : spec + ",") {
        if (c == ',') {
            if (!cur.empty()) names.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    return Subspace::closed_set(ps.strat.space, members_by_name(ps.strat.space, names));
}

std::string member_names(const Poset& p, const std::vector<int>& members) {
    std::string out;
    for (int m : members) {
        if (!out.empty()) out += ",";
        out += p.name(m);
    }
    return out.empty() ? "(empty)" : out;
}

ordered_json json_names(const Poset& p, const std::vector<int>& members) {
    ordered_json arr = ordered_json::array();
    for (int m : members) arr.push_back(p.name(m));
    return arr;
}

const ParsedSheaf& named_sheaf(const ParsedSpace& ps, const std::string& name) {
    auto it = ps.sheaves.find(name);
    if (it == ps.sheaves.end()) throw input_error("no sheaf named " + name + " in the file");
    return it->second;
}

std::string fmt_rank(const Sheaf& s) {
    std::string out;
    for (int d : s.stalk) out += (out.empty() ? "" : ",") + std::to_string(d);
    return " (stalk dims " + out + ")";
}

int cmd_check_space(const std::string& space_spec) {
    Timer t;
    ParsedSpace ps = resolve_space(space_spec);
    ReportDoc rep;
    rep.command = "check-space";
    const Poset& p = ps.strat.space;
    rep.line("space: " + space_spec + " (digest " + ps.digest + ")");
    rep.line("elements: " + member_names(p, [&] {
                 std::vector<int> all;
                 for (int i = 0; i < p.size(); ++i) all.push_back(i);
                 return all;
             }()));
    rep.line("covering relations: " + std::to_string(p.cover_pairs().size()));
    rep.line("S = {" + member_names(p, ps.strat.s.members) + "}, d = " +
             std::to_string(ps.strat.d) + ", c = " + std::to_string(ps.strat.c));
    for (const auto& [name, sub] : ps.closed_sets)
        rep.line("closed " + name + ": {" + member_names(p, sub.members) + "}");
    for (const auto& [name, sh] : ps.sheaves)
        rep.line("sheaf " + name + " on " + sh.carrier +
                 (sh.sheaf.is_local_system() ? " (local system)" : ""));
    rep.machine = ordered_json{{"command", "check-space"},
                               {"digest", ps.digest},
                               {"elements", p.size()},
                               {"strata",
                                {{"S", json_names(p, ps.strat.s.members)},
                                 {"d", ps.strat.d},
                                 {"c", ps.strat.c}}},
                               {"sheaves", ps.sheaves.size()},
                               {"closed_sets", ps.closed_sets.size()},
                               {"verdict", "ok"}};
    rep.elapsed_ms = t.ms();
    rep.emit();
    return 0;
}

int cmd_check_perverse_closed(const std::string& space_spec, const std::string& closed_spec,
                              int max_rank, uint64_t seed) {
    Timer t;
    ParsedSpace ps = resolve_space(space_spec);
    Subspace k = resolve_closed(ps, closed_spec);
    auto family = default_test_family(ps.strat, max_rank, seed);
    PerverseClosedReport verdict = is_perverse_closed(ps.strat, k, family);

    ReportDoc rep;
    rep.command = "check-perverse-closed";
    rep.line("space: " + space_spec + " (digest " + ps.digest + ")");
    rep.line("candidate K: {" + member_names(ps.strat.space, k.members) + "}");
    rep.line("test family: max_rank=" + std::to_string(max_rank) + " seed=" +
             std::to_string(seed) + " (" + std::to_string(family.size()) + " members)");
    ordered_json witnesses = ordered_json::array();
    for (const auto& w : verdict.witnesses) {
        rep.line("witness: test #" + std::to_string(w.test_index) + " side " + w.side +
                 " degree " + std::to_string(w.degree) + " dimension " +
                 std::to_string(w.dimension));
        witnesses.push_back(ordered_json{{"test", w.test_index},
                                         {"side", w.side},
                                         {"degree", w.degree},
                                         {"dimension", w.dimension}});
    }
    rep.line(verdict.verdict ? "verdict: PASS (no counterexample in the family)"
                             : "verdict: FAIL");
    rep.machine = ordered_json{{"command", "check-perverse-closed"},
                               {"digest", ps.digest},
                               {"candidate", json_names(ps.strat.space, k.members)},
                               {"max_rank", max_rank},
                               {"seed", seed},
                               {"tests_run", verdict.tests_run},
                               {"verdict", verdict.verdict},
                               {"witnesses", witnesses}};
    rep.elapsed_ms = t.ms();
    rep.emit();
    return verdict.verdict ? 0 : 1;
}

int cmd_describe_fgt(const std::string& space_spec, const std::string& closed_spec,
                     const std::string& sheaf_name) {
    Timer t;
    ParsedSpace ps = resolve_space(space_spec);
    Subspace k = resolve_closed(ps, closed_spec);
    const ParsedSheaf& sh = named_sheaf(ps, sheaf_name);
    if (sh.carrier != "X0") throw input_error("describe-fgt needs a sheaf carried on X0");
    if (!sh.sheaf.is_local_system())
        throw input_error("describe-fgt needs a local system on X0");
    PerverseOnX0 a{sh.sheaf, -ps.strat.c};
    FgtData data = functor_fgt(ps.strat, k, a);

    ReportDoc rep;
    rep.command = "describe-fgt";
    rep.line("space: " + space_spec + " (digest " + ps.digest + ")");
    rep.line("A = " + sheaf_name + fmt_rank(sh.sheaf));
    Poset sp = ps.strat.s_poset();
    ordered_json per_point = ordered_json::array();
    for (int i = 0; i < sp.size(); ++i) {
        rep.line("at " + sp.name(i) + ": dim F(A) = " + std::to_string(data.f_of_a.stalk[i]) +
                 ", dim G(A) = " + std::to_string(data.g_of_a.stalk[i]) + ", rank T = " +
                 std::to_string(rank(data.t.at(i))) + ", T = " + matrix_to_string(data.t.at(i)));
        per_point.push_back(ordered_json{{"point", sp.name(i)},
                                         {"dim_f", data.f_of_a.stalk[i]},
                                         {"dim_g", data.g_of_a.stalk[i]},
                                         {"rank_t", rank(data.t.at(i))},
                                         {"t", matrix_to_string(data.t.at(i))}});
    }
    rep.machine = ordered_json{{"command", "describe-fgt"},
                               {"digest", ps.digest},
                               {"sheaf", sheaf_name},
                               {"candidate", json_names(ps.strat.space, k.members)},
                               {"per_point", per_point}};
    rep.elapsed_ms = t.ms();
    rep.emit();
    return 0;
}

int cmd_glue(const std::string& space_spec, const std::string& open_name,
             const std::string& closed_name, int trials, uint64_t seed) {
    Timer t;
    ParsedSpace ps = resolve_space(space_spec);
    const Poset& p = ps.strat.space;
    Subspace s = ps.strat.s;
    ReportDoc rep;
    rep.command = "glue";
    rep.line("space: " + space_spec + " (digest " + ps.digest + ")");
    bool all_ok = true;
    ordered_json detail;

    if (!open_name.empty()) {
        GluingTriple triple;
        triple.closed_part = s;
        triple.on_open = named_sheaf(ps, open_name).sheaf;
        if (named_sheaf(ps, open_name).carrier != "X0")
            throw input_error("glue needs the open sheaf carried on X0");
        if (!closed_name.empty()) {
            if (named_sheaf(ps, closed_name).carrier != "S")
                throw input_error("glue needs the closed sheaf carried on S");
            triple.on_closed = named_sheaf(ps, closed_name).sheaf;
        } else {
            triple.on_closed = Sheaf(ps.strat.s_poset(),
                                     std::vector<int>(ps.strat.s_poset().size(), 0));
        }
        triple.glue = SheafMorphism(triple.on_closed,
                                    triple_glue_target(p, s, triple.on_open));
        if (auto err = validate_triple(p, triple)) throw input_error(*err);
        GluedSheaf glued = gluing_functor(p, triple);
        auto w = quasi_inverse_witnesses(p, s, glued.sheaf, triple);
        all_ok = w.glue_restrict_to_id.is_iso() && w.restrict_glue_to_id.open_map.is_iso() &&
                 w.restrict_glue_to_id.closed_map.is_iso();
        rep.line("glued sheaf" + fmt_rank(glued.sheaf));
        rep.line(std::string("round-trip witnesses: ") + (all_ok ? "found" : "MISSING"));
        ordered_json dims = ordered_json::array();
        for (int dd : glued.sheaf.stalk) dims.push_back(dd);
        detail = ordered_json{{"glued_stalks", dims}, {"witnesses", all_ok}};
    } else {
        Rng rng(seed);
        int found = 0;
        for (int i = 0; i < trials; ++i) {
            int rank_open = rng.range(1, 3);
            int rank_closed = rng.range(0, 3);
            GluingTriple triple;
            triple.closed_part = s;
            triple.on_closed = random_local_system(ps.strat.s_poset(), rank_closed, rng);
            triple.on_open = random_local_system(ps.strat.x0_poset(), rank_open, rng);
            Sheaf target = triple_glue_target(p, s, triple.on_open);
            triple.glue = SheafMorphism(triple.on_closed, target);
            for (int x = 0; x < triple.on_closed.space.size(); ++x)
                triple.glue.comp[x] = rng.matrix(target.stalk[x], triple.on_closed.stalk[x]);
            if (validate_triple(p, triple)) continue;
            GluedSheaf glued = gluing_functor(p, triple);
            auto w = quasi_inverse_witnesses(p, s, glued.sheaf, triple);
            if (w.glue_restrict_to_id.is_iso() && w.restrict_glue_to_id.open_map.is_iso() &&
                w.restrict_glue_to_id.closed_map.is_iso())
                ++found;
        }
        all_ok = found == trials;
        rep.line("round-trip witnesses found on " + std::to_string(found) + "/" +
                 std::to_string(trials) + " seeded triples");
        detail = ordered_json{{"trials", trials}, {"found", found}, {"seed", seed}};
    }
    rep.machine = ordered_json{{"command", "glue"},
                               {"digest", ps.digest},
                               {"detail", detail},
                               {"verdict", all_ok}};
    rep.elapsed_ms = t.ms();
    rep.emit();
    return all_ok ? 0 : 1;
}

int cmd_perverse_check(const std::string& space_spec, const std::string& sheaf_name, int degree,
                       const std::string& rj_of, const std::string& ic_of) {
    Timer t;
    ParsedSpace ps = resolve_space(space_spec);
    SheafComplex complex(ps.strat.space);
    std::string description;
    if (!sheaf_name.empty()) {
        const ParsedSheaf& sh = named_sheaf(ps, sheaf_name);
        if (sh.carrier != "X")
            throw input_error("perverse-check --sheaf needs a sheaf carried on X");
        complex = SheafComplex::single(sh.sheaf, degree);
        description = sheaf_name + " in degree " + std::to_string(degree);
    } else if (!rj_of.empty() || !ic_of.empty()) {
        const std::string& name = rj_of.empty() ? ic_of : rj_of;
        const ParsedSheaf& sh = named_sheaf(ps, name);
        if (sh.carrier != "X0" || !sh.sheaf.is_local_system())
            throw input_error("the pushforward variants need a local system on X0");
        SheafComplex shifted = SheafComplex::single(sh.sheaf, -ps.strat.c);
        complex = derived_pushforward_open(ps.strat.space, ps.strat.x0, shifted);
        description = "Rj_* " + name + "[" + std::to_string(ps.strat.c) + "]";
        if (!ic_of.empty()) {
            complex = truncate_le(complex, -ps.strat.d - 1).complex;
            description = "tau^{<=" + std::to_string(-ps.strat.d - 1) + "} " + description;
        }
    } else {
        throw input_error("perverse-check needs --sheaf, --rj-of or --ic-of");
    }
    PerversityReport verdict = is_perverse(ps.strat, complex);

    ReportDoc rep;
    rep.command = "perverse-check";
    rep.line("space: " + space_spec + " (digest " + ps.digest + ")");
    rep.line("complex: " + description);
    for (const auto& f : verdict.failures) rep.line("failure: " + f);
    rep.line(verdict.verdict ? "verdict: PERVERSE" : "verdict: NOT PERVERSE");
    ordered_json failures = ordered_json::array();
    for (const auto& f : verdict.failures) failures.push_back(f);
    rep.machine = ordered_json{{"command", "perverse-check"},
                               {"digest", ps.digest},
                               {"complex", description},
                               {"verdict", verdict.verdict},
                               {"failures", failures}};
    rep.elapsed_ms = t.ms();
    rep.emit();
    return verdict.verdict ? 0 : 1;
}

int cmd_roundtrip(const std::string& space_spec, const std::string& closed_spec, int trials,
                  int pc_trials, int max_rank, uint64_t seed) {
    Timer t;
    ParsedSpace ps = resolve_space(space_spec);
    Subspace k = resolve_closed(ps, closed_spec);
    CftgContext ctx = make_context(ps.strat, k, default_test_family(ps.strat, max_rank, seed));

    ReportDoc rep;
    rep.command = "roundtrip";
    rep.line("space: " + space_spec + " (digest " + ps.digest + ")");
    rep.line("K: {" + member_names(ps.strat.space, k.members) + "}  perverse-closed: " +
             (ctx.certificate.verdict ? "pass" : "FAIL"));
    if (!ctx.certificate.verdict) {
        rep.machine = ordered_json{{"command", "roundtrip"},
                                   {"digest", ps.digest},
                                   {"verdict", false},
                                   {"reason", "K failed the perverse closed check"}};
        rep.elapsed_ms = t.ms();
        rep.emit();
        return 1;
    }

    Rng rng(seed);
    int cp_ok = 0;
    ordered_json cp_detail = ordered_json::array();
    for (int i = 0; i < trials; ++i) {
        CftgObject o = random_object(ctx, rng, max_rank);
        CpRoundTrip rt = roundtrip_cp(ctx, o);
        bool ok = rt.iso.a_map.map.is_iso() && rt.iso.b_map.is_iso();
        cp_ok += ok;
        cp_detail.push_back(ordered_json{{"trial", i},
                                         {"rank_a", o.a.ls.stalk.empty() ? 0 : o.a.ls.stalk[0]},
                                         {"dim_b", o.b.total_dim()},
                                         {"iso", ok}});
    }
    rep.line("C(P(-)) -> id isomorphisms: " + std::to_string(cp_ok) + "/" +
             std::to_string(trials));

    int pc_ok = 0;
    for (int i = 0; i < pc_trials; ++i) {
        CftgObject o = random_object(ctx, rng, max_rank);
        PFunctorResult p = functor_p(ctx, o);
        PcRoundTrip rt = roundtrip_pc(ctx, p.complex());
        pc_ok += rt.zigzag.all_quasi_iso;
    }
    if (pc_trials)
        rep.line("P(C(-)) <-> id zig-zags: " + std::to_string(pc_ok) + "/" +
                 std::to_string(pc_trials));

    bool all = cp_ok == trials && pc_ok == pc_trials;
    rep.line(all ? "verdict: PASS" : "verdict: FAIL");
    rep.machine = ordered_json{{"command", "roundtrip"},
                               {"digest", ps.digest},
                               {"seed", seed},
                               {"max_rank", max_rank},
                               {"cp", {{"trials", trials}, {"ok", cp_ok}, {"detail", cp_detail}}},
                               {"pc", {{"trials", pc_trials}, {"ok", pc_ok}}},
                               {"verdict", all}};
    rep.elapsed_ms = t.ms();
    rep.emit();
    return all ? 0 : 1;
}

int cmd_selftest() {
    Timer t;
    ReportDoc rep;
    rep.command = "selftest";
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        rep.line(std::string(ok ? "PASS " : "FAIL ") + name);
        if (!ok) ++failures;
    };

    StratifiedSpace x = fixtures::strat_disk();
    int s = x.space.index("s");
    {
        SheafComplex pushed = derived_pushforward_open(
            x.space, x.x0, SheafComplex::single(fixtures::circle_system(1), 0));
        check("pushforward stalks of the trivial system",
              cohomology_sheaf(pushed, 0).stalk[s] == 1 &&
                  cohomology_sheaf(pushed, 1).stalk[s] == 1);
        SheafComplex pushed2 = derived_pushforward_open(
            x.space, x.x0, SheafComplex::single(fixtures::circle_system(2), 0));
        check("pushforward stalks of a twisted system",
              cohomology_sheaf(pushed2, 0).stalk[s] == 0 &&
                  cohomology_sheaf(pushed2, 1).stalk[s] == 0);
    }
    auto family = default_test_family(x, 1, 7);
    check("good closed set passes",
          is_perverse_closed(x, fixtures::k_good(x.space), family).verdict);
    check("pointlike closed set fails",
          !is_perverse_closed(
               x, Subspace::closed_set(x.space, members_by_name(x.space, {"s"})), family)
               .verdict);
    {
        FgtData data = functor_fgt(x, fixtures::k_good(x.space),
                                   fixtures::perverse_circle_system(2));
        check("F, G, T dimensions for a twisted system",
              data.f_of_a.stalk == std::vector<int>{1} &&
                  data.g_of_a.stalk == std::vector<int>{1} && rank(data.t.at(0)) == 1);
    }
    {
        CftgContext ctx = make_context(x, fixtures::k_good(x.space), family);
        Rng rng(7);
        CftgObject o = random_object(ctx, rng, 2);
        CpRoundTrip rt = roundtrip_cp(ctx, o);
        check("round trip through the quadruple category",
              rt.iso.a_map.map.is_iso() && rt.iso.b_map.is_iso());
        PcRoundTrip rt2 = roundtrip_pc(ctx, fixtures::ic1());
        check("round trip through the perverse category", rt2.zigzag.all_quasi_iso);
    }
    rep.line(failures == 0 ? "verdict: PASS" : "verdict: FAIL");
    rep.machine = ordered_json{{"command", "selftest"},
                               {"digest", "builtin"},
                               {"failures", failures},
                               {"verdict", failures == 0}};
    rep.elapsed_ms = t.ms();
    rep.emit();
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact checks for perverse gluing on finite stratified posets"};
    app.require_subcommand(1);

    std::string space_spec = "builtin:disk";
    std::string closed_spec = "K_good";
    std::string sheaf_name, open_name, closed_sheaf_name, rj_of, ic_of;
    int max_rank = 2, trials = 20, pc_trials = 0, degree = 0;
    uint64_t seed = 7;

    auto* cs = app.add_subcommand("check-space", "parse and validate a space file");
    cs->add_option("--space", space_spec, "space file or builtin:disk");

    auto* cpc = app.add_subcommand("check-perverse-closed",
                                   "test a closed candidate over a seeded family");
    cpc->add_option("--space", space_spec);
    cpc->add_option("--closed", closed_spec, "closed-set name or comma-separated elements");
    cpc->add_option("--max-rank", max_rank);
    cpc->add_option("--seed", seed);

    auto* fgt = app.add_subcommand("describe-fgt", "dimensions and matrix of F, G, T");
    fgt->add_option("--space", space_spec);
    fgt->add_option("--closed", closed_spec);
    fgt->add_option("--sheaf", sheaf_name, "a local system on X0")->required();

    auto* gl = app.add_subcommand("glue", "glue sheaf data over the closed stratum");
    gl->add_option("--space", space_spec);
    gl->add_option("--open-sheaf", open_name, "sheaf on X0 to glue below");
    gl->add_option("--closed-sheaf", closed_sheaf_name, "sheaf on S (default zero)");
    gl->add_option("--trials", trials);
    gl->add_option("--seed", seed);

    auto* pc = app.add_subcommand("perverse-check", "test a complex for perversity");
    pc->add_option("--space", space_spec);
    pc->add_option("--sheaf", sheaf_name, "sheaf on X placed in --degree");
    pc->add_option("--degree", degree);
    pc->add_option("--rj-of", rj_of, "full pushforward of a shifted X0 system");
    pc->add_option("--ic-of", ic_of, "truncated pushforward of a shifted X0 system");

    auto* rt = app.add_subcommand("roundtrip", "seeded quasi-inverse property runs");
    rt->add_option("--space", space_spec);
    rt->add_option("--closed", closed_spec);
    rt->add_option("--trials", trials);
    rt->add_option("--pc-trials", pc_trials);
    rt->add_option("--max-rank", max_rank);
    rt->add_option("--seed", seed);

    app.add_subcommand("selftest", "quick sweep of the built-in fixtures");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cs->parsed()) return cmd_check_space(space_spec);
        if (cpc->parsed())
            return cmd_check_perverse_closed(space_spec, closed_spec, max_rank, seed);
        if (fgt->parsed()) return cmd_describe_fgt(space_spec, closed_spec, sheaf_name);
        if (gl->parsed()) return cmd_glue(space_spec, open_name, closed_sheaf_name, trials, seed);
        if (pc->parsed()) return cmd_perverse_check(space_spec, sheaf_name, degree, rj_of, ic_of);
        if (rt->parsed())
            return cmd_roundtrip(space_spec, closed_spec, trials, pc_trials, max_rank, seed);
        return cmd_selftest();
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const shape_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const model_error& e) {
        std::cerr << "mathematical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
