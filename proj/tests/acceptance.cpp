// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status is the number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "plh/errors.hpp"
#include "plh/io.hpp"
#include "plh/semiconj.hpp"
#include "plh/witness.hpp"

using namespace plh;

namespace {

PLMap mk(std::vector<Anchor> a, Rat l, Rat r) { return PLMap::from_anchors(std::move(a), l, r); }

PLMap fixture_g1() {
    return mk({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(3, 4)}, {Rat(1), Rat(1)}}, Rat(1, 2), Rat(2));
}
PLMap fixture_g2() {
    return mk({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(3, 4)}, {Rat(1), Rat(1)}}, Rat(2), Rat(2));
}
PLMap fixture_g3() {
    return mk({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(3, 4)}, {Rat(1), Rat(1)}}, Rat(1, 2), Rat(1, 2));
}
PLMap fixture_g4() {
    return mk({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 4)}, {Rat(1), Rat(1)}}, Rat(1, 2), Rat(2));
}
PLMap mover_a() { return mk({{Rat(0), Rat(1, 2)}, {Rat(1), Rat(3, 4)}}, Rat(1), Rat(1)); }
PLMap mover_b() { return PLMap::affine(Rat(1), Rat(1, 2)); }

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<bool(std::ostream&)> run;
};

bool check(std::ostream& log, bool ok, const std::string& what) {
    if (!ok) log << "    FAILED: " << what << "\n";
    return ok;
}

// --- 1. exact algebra over 1000 randomized maps ------------------------------

bool exact_algebra(std::ostream& log) {
    oracle::Rng rng(1001);
    std::vector<PLMap> pool;
    pool.reserve(1000);
    for (int i = 0; i < 1000; ++i) pool.push_back(rng.plmap(6, 1000, 1000));
    bool ok = true;
    for (const auto& g : pool) {
        ok &= check(log, compose(g, g.inverse()) == PLMap::identity(), "g g^-1 != id");
        ok &= check(log, g.inverse().inverse() == g, "(g^-1)^-1 != g");
        ok &= check(log, g == g, "canonical equality not reflexive");
        if (!ok) return false;
    }
    for (std::size_t i = 0; i + 2 < pool.size(); i += 3) {
        ok &= check(log,
                    compose(compose(pool[i], pool[i + 1]), pool[i + 2]) ==
                        compose(pool[i], compose(pool[i + 1], pool[i + 2])),
                    "associativity failed");
        if (!ok) return false;
    }
    return ok;
}

// --- 2. type-signature invariance over 500 random pairs ----------------------

bool type_signature_suite(std::ostream& log) {
    oracle::Rng rng(2002);
    bool ok = true;
    for (int i = 0; i < 500; ++i) {
        const PLMap g = rng.preserving_finite(4);
        PLMap f = rng.plmap(4);
        if (!f.orientation_preserving()) f = compose(PLMap::affine(Rat(-1), Rat(0)), f);
        const TypeSignature t = type_signature(g);
        ok &= check(log, type_signature(compose(compose(f, g), f.inverse())) == t,
                    "conjugation changed the type");
        ok &= check(log, type_signature(g.pow(2)) == t, "g^2 changed the type");
        ok &= check(log, type_signature(g.pow(3)) == t, "g^3 changed the type");
        ok &= check(log, type_signature(g.inverse()) == t.flipped(), "inverse did not flip the type");
        if (!ok) return false;
    }
    return ok;
}

// --- 3. witness constructions for all eight case tags ------------------------

bool witness_case(std::ostream& log, const PLMap& g, const PLMap& f, const GroupBall* ctx,
                  CaseTag initial, CaseTag executed) {
    const auto started = std::chrono::steady_clock::now();
    const WitnessReport r = construct_witness(g, f, ctx);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    bool ok = true;
    ok &= check(log, r.initial_case == initial, "wrong initial case " + to_string(r.initial_case));
    ok &= check(log, r.executed_case == executed, "wrong executed case");
    ok &= check(log, initial == executed ? r.reductions.empty() : r.reductions.size() == 1,
                "reduction did not finish in exactly one step");
    // independent recomputation through the fixed-point solver
    const FixedSet fs = r.witness.fixed_set();
    ok &= check(log, fs == r.fixed_points, "reported fixed set differs from recomputation");
    ok &= check(log, !fs.finite() || fs.point_count() >= 3, "fewer than 3 fixed points");
    for (const auto& [lo, hi] : r.separating_intervals) {
        bool hit = false;
        for (const auto& c : fs.components()) {
            if ((!c.hi || lo < *c.hi) && (!c.lo || *c.lo < hi)) hit = true;
        }
        ok &= check(log, hit, "separating interval (" + lo.str() + ", " + hi.str() + ") is empty");
    }
    ok &= check(log, replay_trace(r), "trace replay failed");
    ok &= check(log, elapsed < 5.0, "case exceeded the 5 s budget");
    return ok;
}

bool witness_suite(std::ostream& log) {
    const GroupBall ctx = GroupBall::build(
        {fixture_g4(), mover_a(), PLMap::affine(Rat(1), Rat(-2)), PLMap::affine(Rat(1), Rat(2))},
        {"g", "f", "u", "v"}, 1);
    bool ok = true;
    ok &= witness_case(log, fixture_g1(), mover_a(), nullptr, CaseTag::c1a, CaseTag::c1b);
    ok &= witness_case(log, fixture_g1(), mover_b(), nullptr, CaseTag::c1b, CaseTag::c1b);
    ok &= witness_case(log, fixture_g2(), mover_a(), nullptr, CaseTag::c2a, CaseTag::c2a);
    ok &= witness_case(log, fixture_g2(), mover_b(), nullptr, CaseTag::c2b, CaseTag::c2a);
    ok &= witness_case(log, fixture_g3(), mover_a(), nullptr, CaseTag::c3a, CaseTag::c3a);
    ok &= witness_case(log, fixture_g3(), mover_b(), nullptr, CaseTag::c3b, CaseTag::c3a);
    ok &= witness_case(log, fixture_g4(), mover_a(), &ctx, CaseTag::c4a, CaseTag::c4a);
    ok &= witness_case(log, fixture_g4(), mover_b(), &ctx, CaseTag::c4b, CaseTag::c4a);
    return ok;
}

// --- 4. the four pipeline fixtures -------------------------------------------

bool pipeline_fixture(std::ostream& log, const std::string& label,
                      const std::vector<PLMap>& gens, const std::vector<std::string>& names,
                      const PipelineOptions& opts, Verdict expected,
                      const std::function<bool(const ClassificationReport&, std::ostream&)>& extra) {
    const auto started = std::chrono::steady_clock::now();
    const ClassificationReport r = theorem_a_report(gens, names, opts);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    bool ok = check(log, r.verdict == expected,
                    label + ": verdict " + to_string(r.verdict) + ", expected " + to_string(expected));
    ok &= check(log, elapsed < 30.0, label + " exceeded the 30 s budget");
    if (ok && extra) ok &= extra(r, log);
    return ok;
}

bool pipeline_suite(std::ostream& log) {
    bool ok = true;
    PipelineOptions base;

    ok &= pipeline_fixture(
        log, "(a) affine pair", {PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(1), Rat(1))},
        {"a", "b"}, base, Verdict::affine_semiconjugate,
        [](const ClassificationReport& r, std::ostream& l) {
            bool ok2 = check(l, r.certificate.has_value(), "(a): no certificate");
            if (ok2)
                ok2 &= check(l, r.certificate->h == MonotonePL::identity(),
                             "(a): certificate is not the identity");
            return ok2;
        });

    const PLMap phi = mk({{Rat(0), Rat(0)}, {Rat(1), Rat(2)}}, Rat(1), Rat(1, 2));
    const PLMap phi_inv = phi.inverse();
    PipelineOptions conj_opts;
    conj_opts.radius = 3;
    conj_opts.certificate = phi;
    ok &= pipeline_fixture(
        log, "(b) conjugated pair",
        {compose(compose(phi_inv, PLMap::affine(Rat(2), Rat(0))), phi),
         compose(compose(phi_inv, PLMap::affine(Rat(1), Rat(1))), phi)},
        {"a", "b"}, conj_opts, Verdict::affine_semiconjugate,
        [&](const ClassificationReport& r, std::ostream& l) {
            bool ok2 = check(l, r.certificate.has_value(), "(b): no certificate");
            if (!ok2) return false;
            ok2 &= check(l, r.certificate->pairs.size() == 2, "(b): expected two pairs");
            ok2 &= check(l, verify_equivariance(r.certificate->h, r.certificate->pairs),
                         "(b): equivariance re-check failed");
            for (const auto& [g, image] : r.certificate->pairs) {
                ok2 &= check(l, image.is_affine(), "(b): image is not affine");
                ok2 &= check(l, compose(compose(phi, g), phi_inv) == image,
                             "(b): bit-exact canonical equality failed");
            }
            return ok2;
        });

    PipelineOptions single_opts;
    single_opts.radius = 6;
    ok &= pipeline_fixture(log, "(c) single generator", {fixture_g1()}, {"g"}, single_opts,
                           Verdict::global_fixed_abelian,
                           [](const ClassificationReport& r, std::ostream& l) {
                               return check(l,
                                            r.global_fixed &&
                                                *r.global_fixed ==
                                                    FixedSet::from_points({Rat(0), Rat(1)}),
                                            "(c): global fixed set is not {0, 1}");
                           });

    ok &= pipeline_fixture(
        log, "(d) identity-tailed pair",
        {mk({{Rat(0), Rat(0)}, {Rat(1), Rat(1, 2)}, {Rat(2), Rat(2)}}, Rat(1), Rat(1)),
         mk({{Rat(1), Rat(1)}, {Rat(3, 2), Rat(5, 4)}, {Rat(2), Rat(2)}}, Rat(1), Rat(1))},
        {"A", "B"}, base, Verdict::violation,
        [](const ClassificationReport& r, std::ostream& l) {
            return check(l,
                         r.max_fixed_verdict && r.max_fixed_verdict->violation &&
                             !r.max_fixed_verdict->violation->fixed.finite(),
                         "(d): no interval-fixing witness");
        });

    return ok;
}

// --- 5. translation-number chart on the free two-translation ball ------------

bool hoelder_suite(std::ostream& log) {
    const std::vector<PLMap> gens = {PLMap::affine(Rat(1), Rat(1)), PLMap::affine(Rat(1), Rat(3, 2))};
    const GroupBall ball = GroupBall::build(gens, {"s", "t"}, 3);
    const TranslationChart chart = translation_chart(ball, gens[0], Rat(0), 200);
    bool ok = check(log, chart.size() == ball.size(), "chart misses elements");
    for (const auto& e : chart) {
        ok &= check(log, e.tau.hi - e.tau.lo <= Rat(1, 100),
                    "bracket wider than 1/100 for " + e.word.str({"s", "t"}));
        const Rat amount = e.element.affine_coefficients().second;
        ok &= check(log, e.tau.lo <= amount && amount <= e.tau.hi,
                    "bracket misses the exact amount " + amount.str());
    }
    ok &= check(log, chart_monotonicity(chart).compatible, "chart order violated");
    ok &= check(log, check_max_fixed(ball, 0).holds_on_ball, "free ball has a fixed point");
    ok &= check(log, is_abelian_on_ball(ball).holds, "free ball is not abelian");
    return ok;
}

// --- 6. abelian actions: every fixed point is globally fixed -----------------

bool abelian_suite(std::ostream& log) {
    oracle::Rng rng(6006);
    bool ok = true;
    for (int i = 0; i < 25; ++i) {
        // powers of one map with fixed points
        const PLMap g = rng.preserving_with_fixed_point(3);
        const long a = rng.integer(1, 3);
        long b = rng.integer(1, 3);
        if (b == a) ++b;
        const GroupBall ball = GroupBall::build({g.pow(a), g.pow(b)}, {}, 4);
        ok &= check(log, abelian_global_fixed_check(ball).holds,
                    "powers-of-one-map fixture " + std::to_string(i) + " failed");
        if (!ok) return false;
    }
    for (int i = 0; i < 25; ++i) {
        // simultaneously conjugated translations
        PLMap phi = rng.plmap(3);
        if (!phi.orientation_preserving()) phi = compose(PLMap::affine(Rat(-1), Rat(0)), phi);
        const PLMap t1 = compose(compose(phi, PLMap::affine(Rat(1), rng.positive_rat(5, 3))),
                                 phi.inverse());
        const PLMap t2 = compose(compose(phi, PLMap::affine(Rat(1), rng.positive_rat(5, 3))),
                                 phi.inverse());
        const GroupBall ball = GroupBall::build({t1, t2}, {}, 4);
        ok &= check(log, abelian_global_fixed_check(ball).holds,
                    "conjugated-translations fixture " + std::to_string(i) + " failed");
        if (!ok) return false;
    }
    return ok;
}

// --- 7. the funnel interval --------------------------------------------------

bool funnel_suite(std::ostream& log) {
    const Funnel funnel =
        Funnel::build({PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(1), Rat(1))}, 1);
    bool ok = check(log, funnel.f_zero() == Rat(1), "F(0) != 1");
    oracle::Rng rng(7007);
    for (int i = 0; i < 100; ++i) {
        const Rat x(rng.integer(-9900, 9900), 100);  // samples in (-100, 100)
        ok &= check(log, funnel.apply(x) > x, "F(x) <= x at " + x.str());
        const Funnel::Drive drive = funnel.drive_to_core(x);
        ok &= check(log, Rat(0) <= drive.core && drive.core < funnel.f_zero(),
                    "core outside [0, F(0)) for x = " + x.str());
        for (std::size_t k = 1; k < drive.chain.size(); ++k) {
            ok &= check(log, drive.chain[k - 1] < drive.chain[k], "chain not strictly increasing");
            ok &= check(log, funnel.apply(drive.chain[k - 1]) == drive.chain[k],
                        "chain is not a consecutive F-orbit");
        }
        if (!ok) return false;
    }
    return ok;
}

// --- 8. negative controls ----------------------------------------------------

bool negative_controls(std::ostream& log) {
    bool ok = true;

    // shuffled tau chart is flagged
    const GroupBall ball = GroupBall::build(
        {PLMap::affine(Rat(1), Rat(1)), PLMap::affine(Rat(1), Rat(3, 2))}, {}, 2);
    TranslationChart chart = translation_chart(ball, PLMap::affine(Rat(1), Rat(1)), Rat(0), 100);
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < chart.size(); ++i) {
        if (chart[i].at_base < chart[lo].at_base) lo = i;
        if (chart[i].at_base > chart[hi].at_base) hi = i;
    }
    std::swap(chart[lo].tau, chart[hi].tau);
    ok &= check(log, !chart_monotonicity(chart).compatible, "shuffled chart not flagged");

    // non-equivariant certificate rejected
    ok &= check(log,
                !verify_equivariance(MonotonePL::identity(),
                                     {{PLMap::affine(Rat(1), Rat(1)), PLMap::affine(Rat(1), Rat(2))}}),
                "bogus certificate accepted");

    // overlapping collapse intervals rejected
    try {
        collapse_map({{Rat(0), Rat(2)}, {Rat(1), Rat(3)}});
        ok = check(log, false, "overlapping collapse intervals accepted");
    } catch (const OverlapError&) {
    }

    // non-monotone anchor list rejected at parse
    try {
        map_from_text("pl left_slope=1 anchors=(1,0);(0,1) right_slope=1");
        ok = check(log, false, "non-monotone anchors accepted");
    } catch (const ParseError&) {
    }

    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"exact-algebra (1000 random maps: round trip, associativity, reflexivity)", 10.0,
         exact_algebra},
        {"type-signature invariance (500 pairs: conjugation, powers, inverse flip)", 60.0,
         type_signature_suite},
        {"witness constructions (all 8 case tags, certified fixed points)", 40.0, witness_suite},
        {"classification pipeline (4 fixtures)", 120.0, pipeline_suite},
        {"translation-number chart (width <= 1/100, exact containment, order)", 30.0, hoelder_suite},
        {"abelian fixtures (50 balls: fixed points globally fixed)", 60.0, abelian_suite},
        {"funnel iteration (100 samples reach [0, F(0)) increasingly)", 30.0, funnel_suite},
        {"negative controls (shuffle, bad certificate, overlap, bad anchors)", 10.0,
         negative_controls},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::ostringstream log;
        bool ok = false;
        double elapsed = 0.0;
        const auto started = std::chrono::steady_clock::now();
        try {
            ok = criterion.run(log);
        } catch (const std::exception& e) {
            log << "    exception: " << e.what() << "\n";
        }
        elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (elapsed >= criterion.budget_seconds) {
            log << "    over budget: " << elapsed << " s >= " << criterion.budget_seconds << " s\n";
            ok = false;
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.name << "  (" << elapsed << " s)\n"
                  << log.str();
        if (!ok) ++failures;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures;
}
