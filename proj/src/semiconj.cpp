#include "plh/semiconj.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "plh/errors.hpp"

namespace plh {

namespace {

constexpr std::size_t kOrbitStepCap = 100000;

}  // namespace

TranslationChart translation_chart(const GroupBall& ball, const PLMap& g0, const Rat& x0,
                                   long iterations) {
    if (iterations <= 0) throw PreconditionError("iterations must be positive");
    if (!ball.contains(g0)) throw PreconditionError("the reference element must lie in the ball");
    if (!g0.fixed_set().empty())
        throw PreconditionError("the reference element must be fixed-point-free");
    if (!(g0(x0) > x0)) throw PreconditionError("the reference element must move the base point up");

    for (const auto& entry : ball.entries()) {
        if (entry.element.is_identity()) continue;
        if (!entry.element.fixed_set().empty())
            throw NotFree("translation chart undefined: ball element " +
                              entry.word.str(ball.generator_names()) + " has fixed points " +
                              entry.element.fixed_set().str(),
                          entry.word.str(ball.generator_names()));
    }

    const PLMap g0inv = g0.inverse();
    const Rat n_rat(iterations);
    TranslationChart chart;
    chart.reserve(ball.size());
    for (const auto& entry : ball.entries()) {
        Rat y = x0;
        for (long i = 0; i < iterations; ++i) y = entry.element(y);

        // locate y in the g0-grid: g0^p(x0) <= y < g0^(p+1)(x0)
        long p = 0;
        Rat cur = x0;
        if (y >= x0) {
            while (true) {
                Rat next = g0(cur);
                if (next <= y) {
                    cur = std::move(next);
                    ++p;
                } else {
                    break;
                }
            }
        } else {
            while (cur > y) {
                cur = g0inv(cur);
                --p;
            }
        }
        assert(cur <= y && y < g0(cur));

        TauEstimate tau{Rat(p) / n_rat, (Rat(p) + Rat(1)) / n_rat, iterations, g0, x0};
        if (cur == y && compose(entry.element, g0) == compose(g0, entry.element)) {
            // exact grid hit of a commuting element: the translation number is p/n
            tau.hi = tau.lo;
        }
        chart.push_back(ChartEntry{entry.element, entry.word, entry.element(x0), std::move(tau)});
    }
    return chart;
}

ChartMonotonicity chart_monotonicity(const TranslationChart& chart) {
    for (std::size_t i = 0; i < chart.size(); ++i) {
        for (std::size_t j = i + 1; j < chart.size(); ++j) {
            const auto& a = chart[i];
            const auto& b = chart[j];
            if (a.at_base < b.at_base && a.tau.lo > b.tau.hi)
                return ChartMonotonicity{false, std::make_pair(i, j)};
            if (b.at_base < a.at_base && b.tau.lo > a.tau.hi)
                return ChartMonotonicity{false, std::make_pair(i, j)};
        }
    }
    return ChartMonotonicity{true, std::nullopt};
}

bool verify_equivariance(const MonotonePL& h, const std::vector<std::pair<PLMap, PLMap>>& pairs) {
    for (const auto& [g, image] : pairs) {
        const detail::PLData lhs = detail::compose(image.data(), h.data());
        const detail::PLData rhs = detail::compose(h.data(), g.data());
        if (!(lhs == rhs)) return false;
    }
    return true;
}

MonotonePL collapse_map(std::vector<std::pair<Rat, Rat>> intervals) {
    for (const auto& [lo, hi] : intervals) {
        if (!(lo < hi)) throw ValidationError("collapse interval needs lo < hi");
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        if (!(intervals[i - 1].second < intervals[i].first))
            throw OverlapError("collapse intervals (" + intervals[i - 1].first.str() + ", " +
                               intervals[i - 1].second.str() + ") and (" + intervals[i].first.str() +
                               ", " + intervals[i].second.str() + ") overlap or touch");
    }

    // slope 1 off the intervals, each plateau at height lo - (collapsed length so far)
    std::vector<Anchor> anchors;
    anchors.reserve(2 * intervals.size());
    Rat shift(0);
    for (const auto& [lo, hi] : intervals) {
        const Rat level = lo - shift;
        anchors.push_back(Anchor{lo, level});
        anchors.push_back(Anchor{hi, level});
        shift += hi - lo;
    }
    return MonotonePL::from_anchors(std::move(anchors), Rat(1), Rat(1));
}

std::string to_string(MinimalKind kind) {
    switch (kind) {
        case MinimalKind::finite_orbit: return "finite_orbit";
        case MinimalKind::discrete_suspected: return "discrete_suspected";
        case MinimalKind::dense_suspected: return "dense_suspected";
        case MinimalKind::cantor_suspected: return "cantor_suspected";
    }
    return "?";
}

namespace {

// Size-1 and size-2 global orbits; anything larger is out of reach here.
std::optional<FixedSet> find_small_global_orbit(const GroupBall& ball) {
    const FixedSet global = global_fixed_points(ball);
    if (!global.empty()) return global;

    // a 2-orbit {p, q}: p fixed by all preserving generators, q = r(p) for a
    // reversing generator, and every generator permutes {p, q}
    std::vector<const PLMap*> preserving;
    std::vector<const PLMap*> reversing;
    for (const auto& g : ball.generators()) {
        (g.orientation_preserving() ? preserving : reversing).push_back(&g);
    }
    if (reversing.empty()) return std::nullopt;
    FixedSet shared = FixedSet::whole_line();
    for (const auto* g : preserving) shared = intersect(shared, g->fixed_set());
    if (!shared.finite()) return std::nullopt;
    for (const auto& p : shared.points()) {
        for (const auto* r : reversing) {
            const Rat q = (*r)(p);
            bool invariant = true;
            for (const auto& g : ball.generators()) {
                const Rat gp = g(p);
                const Rat gq = g(q);
                if (!((gp == p && gq == q) || (gp == q && gq == p))) {
                    invariant = false;
                    break;
                }
            }
            if (invariant) return FixedSet::from_points({p, q});
        }
    }
    return std::nullopt;
}

}  // namespace

MinimalReport classify_minimal(const GroupBall& ball, std::pair<Rat, Rat> window,
                               const Rat& resolution) {
    if (!(window.first < window.second)) throw PreconditionError("window needs lo < hi");
    if (resolution.sign() <= 0) throw PreconditionError("resolution must be positive");

    MinimalReport report;
    report.window = window;
    report.resolution = resolution;
    report.base = midpoint(window.first, window.second);
    report.max_gap = window.second - window.first;

    if (auto orbit = find_small_global_orbit(ball)) {
        report.kind = MinimalKind::finite_orbit;
        report.heuristic = false;
        report.finite_set = std::move(*orbit);
        return report;
    }
    report.heuristic = true;

    // sampled ball orbit of the window midpoint, window edges included as
    // boundary markers for the gap measure
    std::set<Rat> pts;
    for (const auto& entry : ball.entries()) {
        Rat v = entry.element(report.base);
        if (window.first <= v && v <= window.second) pts.insert(std::move(v));
    }
    report.orbit_size = pts.size();
    std::vector<Rat> marked{window.first};
    marked.insert(marked.end(), pts.begin(), pts.end());
    marked.push_back(window.second);
    Rat max_gap(0);
    for (std::size_t i = 1; i < marked.size(); ++i) {
        Rat gap = marked[i] - marked[i - 1];
        if (gap > max_gap) max_gap = std::move(gap);
    }
    report.max_gap = max_gap;

    if (max_gap <= resolution) {
        report.kind = MinimalKind::dense_suspected;
        return report;
    }

    // discrete: a fixed-point-free element whose orbit carries every sample
    for (const auto& entry : ball.entries()) {
        if (entry.element.is_identity() || !entry.element.fixed_set().empty()) continue;
        std::set<Rat> orbit;
        Rat up = report.base;
        std::size_t steps = 0;
        while (window.first <= up && up <= window.second && steps++ < kOrbitStepCap) {
            orbit.insert(up);
            up = entry.element(up);
        }
        Rat down = entry.element.inverse()(report.base);
        steps = 0;
        while (window.first <= down && down <= window.second && steps++ < kOrbitStepCap) {
            orbit.insert(down);
            down = entry.element.inverse()(down);
        }
        if (std::includes(orbit.begin(), orbit.end(), pts.begin(), pts.end())) {
            report.kind = MinimalKind::discrete_suspected;
            report.discrete_element = entry;
            return report;
        }
        break;  // only the first fixed-point-free element is offered as the candidate
    }

    report.kind = MinimalKind::cantor_suspected;
    return report;
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::global_fixed_abelian: return "global_fixed_abelian";
        case Verdict::affine_semiconjugate: return "affine_semiconjugate";
        case Verdict::translation_semiconjugate: return "translation_semiconjugate";
        case Verdict::violation: return "violation";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::optional<PLMap> push_through_collapse(const MonotonePL& h, const PLMap& g, std::string* why) {
    const detail::PLData r = detail::compose(h.data(), g.data());

    std::vector<Rat> xs;
    for (const auto& a : r.anchors) xs.push_back(a.x);
    for (const auto& a : h.anchors()) xs.push_back(a.x);
    if (xs.empty()) xs.push_back(Rat(0));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    // graph of theta sampled at h-images; duplicates must agree exactly
    std::vector<Anchor> graph;
    graph.reserve(xs.size());
    for (const auto& x : xs) {
        Anchor a{h(x), detail::eval(r, x)};
        if (!graph.empty() && graph.back().x == a.x) {
            if (!(graph.back().y == a.y)) {
                if (why)
                    *why = "the collapse identifies points that g separates (at t = " + a.x.str() + ")";
                return std::nullopt;
            }
            continue;
        }
        graph.push_back(std::move(a));
    }
    try {
        return PLMap::from_anchors(std::move(graph), r.left / h.left_slope(),
                                   r.right / h.right_slope());
    } catch (const ValidationError& e) {
        if (why) *why = std::string("collapsed generator is not a homeomorphism: ") + e.what();
        return std::nullopt;
    }
}

namespace {

void add_note(ClassificationReport& report, std::string note) {
    report.notes.push_back(std::move(note));
}

}  // namespace

ClassificationReport theorem_a_report(const std::vector<PLMap>& generators,
                                      const std::vector<std::string>& names,
                                      const PipelineOptions& options) {
    ClassificationReport report;
    report.verdict = Verdict::inconclusive;
    report.radius = options.radius;
    report.disclaimer =
        "semi-decision at ball radius " + std::to_string(options.radius) +
        ": a violation verdict is certified exactly; every other verdict is evidence on the finite "
        "ball and a PL-representable sample, not a proof for the full group";

    if (generators.empty()) {
        report.verdict = Verdict::global_fixed_abelian;
        report.ball_size = 1;
        report.global_fixed = FixedSet::whole_line();
        add_note(report, "no generators: the trivial group fixes every point");
        return report;
    }

    GroupBall ball;
    try {
        ball = GroupBall::build(generators, names, options.radius, options.element_cap);
    } catch (const ResourceLimitExceeded& e) {
        add_note(report, std::string("ball construction hit the element cap: ") + e.what());
        return report;
    }
    report.ball_size = ball.size();

    // (i) the max-fixed scan; any hit certifies a violation outright
    PropertyVerdict scan = check_max_fixed(ball, options.max_fixed);
    if (!scan.holds_on_ball) {
        report.verdict = Verdict::violation;
        add_note(report, "element " + scan.violation->word.str(ball.generator_names()) +
                             " has fixed set " + scan.violation->fixed.str() + " (more than " +
                             std::to_string(options.max_fixed) + " fixed points)");
        report.max_fixed_verdict = std::move(scan);
        return report;
    }

    // (ii) global fixed point of the orientation-preserving generators
    std::vector<const PLMap*> preserving_gens;
    for (const auto& g : generators) {
        if (g.orientation_preserving() && !g.is_identity()) preserving_gens.push_back(&g);
    }
    if (!preserving_gens.empty()) {
        FixedSet shared = FixedSet::whole_line();
        for (const auto* g : preserving_gens) shared = intersect(shared, g->fixed_set());
        if (!shared.empty()) {
            const CommutationVerdict ab = is_abelian_on_ball(ball);
            if (!ab.holds) {
                add_note(report,
                         "generators share fixed points " + shared.str() +
                             " but do not commute; with at most " + std::to_string(options.max_fixed) +
                             " fixed points this cannot persist in the full group, yet no witness is "
                             "reachable at this radius");
                return report;
            }
            GlobalFixedCheck check = abelian_global_fixed_check(ball);
            if (!check.holds) {
                add_note(report, "abelian ball has a non-globally-fixed point: element " +
                                     check.violation->word.str(ball.generator_names()) + " fixes " +
                                     check.violation->point.str() +
                                     " outside the global fixed set " + check.global.str());
                return report;
            }
            report.verdict = Verdict::global_fixed_abelian;
            report.global_fixed = std::move(check.global);
            return report;
        }
    } else {
        add_note(report, "no orientation-preserving generators; the global-fixed-point branch was "
                         "skipped (products of reversing generators are examined via the ball)");
    }

    // (iii) two-fixed-point elements: wandering or an exact witness
    std::set<std::pair<Rat, Rat>> spans;
    std::vector<std::pair<Rat, Rat>> wandering_spans;
    bool unresolved_mover = false;
    for (const auto& entry : ball.entries()) {
        if (entry.element.is_identity()) continue;
        const FixedSet fs = entry.element.fixed_set();
        if (!fs.finite() || fs.point_count() != 2) continue;
        const auto pts = fs.points();
        if (!spans.insert({pts[0], pts[1]}).second) continue;
        const Rat& x = pts[0];
        const Rat& y = pts[1];

        // every element moving x into (x, y) is a candidate mover; one
        // certified construction settles the verdict
        bool span_moves = false;
        bool constructed = false;
        std::size_t failures = 0;
        for (const auto& mover : ball.entries()) {
            const Rat mx = mover.element(x);
            if (!(x < mx && mx < y)) continue;
            span_moves = true;
            try {
                WitnessOptions wopts;
                wopts.exponent_cap = options.exponent_cap;
                WitnessReport wr = witness_pipeline(entry.element, mover.element, &ball, wopts);
                report.verdict = Verdict::violation;
                add_note(report, "orbit of " + x.str() + " enters (" + x.str() + ", " + y.str() +
                                     ") via " + mover.word.str(ball.generator_names()) + "; case " +
                                     to_string(wr.initial_case) +
                                     " construction certified a witness with fixed set " +
                                     wr.fixed_points.str());
                report.witness = std::move(wr);
                constructed = true;
                break;
            } catch (const Error& e) {
                if (++failures <= 3)
                    add_note(report, "mover " + mover.word.str(ball.generator_names()) +
                                         " for the span (" + x.str() + ", " + y.str() +
                                         ") did not complete a construction: " + e.what());
            }
        }
        if (failures > 3)
            add_note(report, std::to_string(failures - 3) + " further mover(s) for the span (" +
                                 x.str() + ", " + y.str() + ") also failed");
        if (constructed) return report;
        if (span_moves) {
            unresolved_mover = true;  // wandering failed here, but nothing was certified
        } else {
            wandering_spans.push_back({x, y});
        }
    }
    if (unresolved_mover) {
        add_note(report,
                 "some span is entered by its orbit, so the wandering hypothesis fails, but no "
                 "construction completed at this radius; raise the radius or the caps");
        return report;
    }

    // (iv) collapse the ball-orbits of the wandering spans and re-test
    MonotonePL collapse = MonotonePL::identity();
    std::vector<PLMap> reduced = generators;
    if (!wandering_spans.empty()) {
        std::vector<std::pair<Rat, Rat>> family;
        for (const auto& [x, y] : wandering_spans) {
            for (const auto& entry : ball.entries()) {
                Rat a = entry.element(x);
                Rat b = entry.element(y);
                if (b < a) std::swap(a, b);
                family.emplace_back(std::move(a), std::move(b));
            }
        }
        // merge overlapping or touching images into their hull
        std::sort(family.begin(), family.end());
        std::vector<std::pair<Rat, Rat>> merged;
        for (auto& iv : family) {
            if (!merged.empty() && iv.first <= merged.back().second) {
                if (iv.second > merged.back().second) merged.back().second = std::move(iv.second);
            } else {
                merged.push_back(std::move(iv));
            }
        }
        collapse = collapse_map(merged);
        add_note(report, std::to_string(merged.size()) +
                             " wandering interval(s) collapsed before re-testing");

        reduced.clear();
        std::vector<std::pair<PLMap, PLMap>> push_pairs;
        for (const auto& g : generators) {
            std::string why;
            auto theta = push_through_collapse(collapse, g, &why);
            if (!theta) {
                add_note(report, "collapse is not compatible with a generator at this radius: " + why);
                return report;
            }
            push_pairs.emplace_back(g, *theta);
            reduced.push_back(std::move(*theta));
        }
        if (!verify_equivariance(collapse, push_pairs)) {
            add_note(report, "collapsed generators failed the exact equivariance re-check");
            return report;
        }
    }

    GroupBall reduced_ball;
    try {
        reduced_ball = wandering_spans.empty()
                           ? std::move(ball)
                           : GroupBall::build(reduced, names, options.radius, options.element_cap);
    } catch (const ResourceLimitExceeded& e) {
        add_note(report, std::string("collapsed ball construction hit the element cap: ") + e.what());
        return report;
    }

    if (!wandering_spans.empty()) {
        const PropertyVerdict after = check_max_fixed(reduced_ball, 1);
        if (!after.holds_on_ball) {
            add_note(report, "collapsed action still has an element with more than one fixed point "
                             "at this radius: " +
                                 after.violation->word.str(reduced_ball.generator_names()) +
                                 " with fixed set " + after.violation->fixed.str());
            return report;
        }
    }

    MinimalReport minimal = classify_minimal(reduced_ball, options.window, options.resolution);
    const MinimalKind kind = minimal.kind;
    report.minimal = std::move(minimal);

    if (kind == MinimalKind::discrete_suspected || kind == MinimalKind::finite_orbit) {
        report.verdict = Verdict::translation_semiconjugate;
        if (!collapse.is_identity())
            add_note(report, "verdict refers to the action after collapsing the wandering intervals");
        return report;
    }

    // affine model: user certificate, or the generators as they stand
    if (options.certificate) {
        const PLMap& phi = *options.certificate;
        if (!phi.orientation_preserving()) {
            add_note(report, "certificate must preserve orientation to be a semi-conjugacy");
            return report;
        }
        const PLMap phi_inv = phi.inverse();
        std::vector<std::pair<PLMap, PLMap>> pairs;
        for (const auto& g : reduced) {
            PLMap image = compose(compose(phi, g), phi_inv);
            if (!image.is_affine()) {
                add_note(report, "certificate does not conjugate every generator into the affine "
                                 "group; first failure has canonical form with " +
                                     std::to_string(image.anchors().size()) + " anchors");
                return report;
            }
            pairs.emplace_back(g, std::move(image));
        }
        MonotonePL h_total = compose(MonotonePL::from_homeomorphism(phi), collapse);
        std::vector<std::pair<PLMap, PLMap>> total_pairs;
        for (std::size_t i = 0; i < generators.size(); ++i)
            total_pairs.emplace_back(generators[i], pairs[i].second);
        if (!verify_equivariance(h_total, total_pairs)) {
            add_note(report, "certificate failed the exact equivariance check");
            return report;
        }
        report.verdict = Verdict::affine_semiconjugate;
        report.certificate = EquivarianceCertificate{std::move(h_total), std::move(total_pairs)};
        return report;
    }

    bool all_affine = true;
    for (const auto& g : reduced) {
        if (!g.is_affine()) {
            all_affine = false;
            break;
        }
    }
    if (all_affine) {
        std::vector<std::pair<PLMap, PLMap>> pairs;
        for (std::size_t i = 0; i < generators.size(); ++i) pairs.emplace_back(generators[i], reduced[i]);
        if (!verify_equivariance(collapse, pairs)) {
            add_note(report, "identity/collapse certificate failed the exact equivariance check");
            return report;
        }
        report.verdict = Verdict::affine_semiconjugate;
        report.certificate = EquivarianceCertificate{collapse, std::move(pairs)};
        return report;
    }

    add_note(report,
             "no affine model certificate: supply one with a certificate line, or raise the radius");
    return report;
}

}  // namespace plh
