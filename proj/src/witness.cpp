#include "plh/witness.hpp"

#include <cassert>

#include "plh/errors.hpp"

namespace plh {

namespace {

const TypeSignature kPPP{{Sign::plus, Sign::plus, Sign::plus}};
const TypeSignature kMPP{{Sign::minus, Sign::plus, Sign::plus}};
const TypeSignature kPPM{{Sign::plus, Sign::plus, Sign::minus}};
const TypeSignature kPMP{{Sign::plus, Sign::minus, Sign::plus}};

int type_row(const TypeSignature& t) {
    if (t == kPPP) return 1;
    if (t == kMPP) return 2;
    if (t == kPPM) return 3;
    if (t == kPMP) return 4;
    return 0;
}

CaseTag make_tag(int row, bool side_a) {
    switch (row) {
        case 1: return side_a ? CaseTag::c1a : CaseTag::c1b;
        case 2: return side_a ? CaseTag::c2a : CaseTag::c2b;
        case 3: return side_a ? CaseTag::c3a : CaseTag::c3b;
        default: return side_a ? CaseTag::c4a : CaseTag::c4b;
    }
}

// Records the comparison and insists it holds; a failure here means the
// construction diverged from what the case analysis guarantees.
void record(std::vector<TraceCheck>& trace, std::string what, Rat lhs, std::string rel, Rat rhs) {
    TraceCheck c{std::move(what), std::move(lhs), std::move(rel), std::move(rhs)};
    if (!trace_holds(c))
        throw ReductionFailed("exact check failed: " + c.what + " (" + c.lhs.str() + " " + c.rel +
                              " " + c.rhs.str() + " is false)");
    trace.push_back(std::move(c));
}

std::pair<Rat, Rat> two_fixed_points(const PLMap& g) {
    const FixedSet fs = g.fixed_set();
    if (!fs.finite() || fs.point_count() != 2)
        throw PreconditionError("element must have exactly two fixed points, got Fix = " + fs.str());
    const auto pts = fs.points();
    return {pts[0], pts[1]};
}

bool component_meets_open(const FixedSet::Component& c, const Rat& lo, const Rat& hi) {
    return (!c.hi || lo < *c.hi) && (!c.lo || *c.lo < hi);
}

bool interval_contains_fixed_point(const FixedSet& fs, const Rat& lo, const Rat& hi) {
    for (const auto& c : fs.components()) {
        if (component_meets_open(c, lo, hi)) return true;
    }
    return false;
}

// Every report leaves here with a from-scratch fixed set, the three-point
// lower bound, and one fixed point certified inside each separating interval.
void finalize_report(WitnessReport& report) {
    if (report.witness.is_identity()) throw ReductionFailed("constructed witness is the identity");
    report.fixed_points = report.witness.fixed_set();
    const bool enough = !report.fixed_points.finite() || report.fixed_points.point_count() >= 3;
    if (!enough)
        throw ReductionFailed("constructed witness has fewer than 3 fixed points: Fix = " +
                              report.fixed_points.str());
    assert(report.separating_intervals.size() == 3);
    for (const auto& [lo, hi] : report.separating_intervals) {
        if (!interval_contains_fixed_point(report.fixed_points, lo, hi))
            throw ReductionFailed("separating interval (" + lo.str() + ", " + hi.str() +
                                  ") contains no fixed point of the witness");
    }
}

template <typename Cond, typename Step>
long minimal_exponent(long cap, const std::string& desc, const Cond& condition, const Step& advance) {
    for (long n = 0; n <= cap; ++n) {
        if (condition()) return n;
        advance();
    }
    throw ExponentCapExceeded("no exponent up to " + std::to_string(cap) + " satisfies " + desc +
                              "; inconclusive");
}

// Case 1b: g of type (+,+,+), f(y) > y. Witness h g^-1 with h = f g f^-1.
void construct_1b(WitnessReport& report, const PLMap& g, const PLMap& f, const Rat& x, const Rat& y) {
    const Rat fx = f(x);
    const Rat fy = f(y);
    const PLMap h = compose(compose(f, g), f.inverse());
    report.elements.push_back(NamedMap{"h", "f g f^-1", h});
    const PLMap w = compose(h, g.inverse());

    auto& tr = report.trace;
    record(tr, "x < f(x)", x, "<", fx);
    record(tr, "f(x) < y", fx, "<", y);
    record(tr, "y < f(y)", y, "<", fy);
    record(tr, "w(x) > x", w(x), ">", x);
    record(tr, "w(f(x)) < f(x)", w(fx), "<", fx);
    record(tr, "w(y) > y", w(y), ">", y);
    record(tr, "w(f(y)) < f(y)", w(fy), "<", fy);

    report.witness = w;
    report.witness_expression = "h g^-1";
    report.separating_intervals = {{x, fx}, {fx, y}, {y, fy}};
    finalize_report(report);
}

// Case 2a: g of type (-,+,+), f(y) < y. Witness h g^-n with n minimal such
// that g^n(x-1) < h(x-1) and g^n(y+1) > h(y+1).
void construct_2a(WitnessReport& report, const PLMap& g, const PLMap& f, const Rat& x, const Rat& y,
                  const WitnessOptions& options) {
    const PLMap h = compose(compose(f, g), f.inverse());
    report.elements.push_back(NamedMap{"h", "f g f^-1", h});
    const Rat target_lo = h(x - Rat(1));
    const Rat target_hi = h(y + Rat(1));

    // g drags x-1 toward -inf and y+1 toward +inf; iterate both orbit points.
    Rat p = x - Rat(1);
    Rat q = y + Rat(1);
    const long n = minimal_exponent(
        options.exponent_cap, "g^n(x-1) < h(x-1) and g^n(y+1) > h(y+1)",
        [&] { return p < target_lo && q > target_hi; }, [&] { p = g(p); q = g(q); });
    report.exponent_n = n;

    auto& tr = report.trace;
    record(tr, "g^n(x-1) < h(x-1)", p, "<", target_lo);
    record(tr, "g^n(y+1) > h(y+1)", q, ">", target_hi);
    if (n > 0) {
        // minimality: at least one defining inequality fails at n-1
        const PLMap gn1 = g.pow(n - 1);
        const Rat p1 = gn1(x - Rat(1));
        const Rat q1 = gn1(y + Rat(1));
        if (!(p1 < target_lo)) {
            record(tr, "minimality: g^(n-1)(x-1) >= h(x-1)", p1, ">=", target_lo);
        } else {
            record(tr, "minimality: g^(n-1)(y+1) <= h(y+1)", q1, "<=", target_hi);
        }
    }

    const PLMap w = compose(h, g.pow(-n));
    record(tr, "w(h(x-1)) > h(x-1)", w(target_lo), ">", target_lo);
    record(tr, "w(x) < x", w(x), "<", x);
    record(tr, "w(y) > y", w(y), ">", y);
    record(tr, "w(h(y+1)) < h(y+1)", w(target_hi), "<", target_hi);

    report.witness = w;
    report.witness_expression = "h g^-" + std::to_string(n);
    report.separating_intervals = {{target_lo, x}, {x, y}, {y, target_hi}};
    finalize_report(report);
}

// Case 3a: g of type (+,+,-), f(y) < y. Witness h^-1 g^n with n minimal such
// that g^-n(x-1) < h^-1(x-1) and g^-n(y+1) > h^-1(y+1).
void construct_3a(WitnessReport& report, const PLMap& g, const PLMap& f, const Rat& x, const Rat& y,
                  const WitnessOptions& options) {
    const PLMap h = compose(compose(f, g), f.inverse());
    report.elements.push_back(NamedMap{"h", "f g f^-1", h});
    const PLMap hinv = h.inverse();
    const PLMap ginv = g.inverse();
    const Rat target_lo = hinv(x - Rat(1));
    const Rat target_hi = hinv(y + Rat(1));

    Rat p = x - Rat(1);
    Rat q = y + Rat(1);
    const long n = minimal_exponent(
        options.exponent_cap, "g^-n(x-1) < h^-1(x-1) and g^-n(y+1) > h^-1(y+1)",
        [&] { return p < target_lo && q > target_hi; }, [&] { p = ginv(p); q = ginv(q); });
    report.exponent_n = n;

    auto& tr = report.trace;
    record(tr, "g^-n(x-1) < h^-1(x-1)", p, "<", target_lo);
    record(tr, "g^-n(y+1) > h^-1(y+1)", q, ">", target_hi);
    if (n > 0) {
        const PLMap gn1 = g.pow(-(n - 1));
        const Rat p1 = gn1(x - Rat(1));
        const Rat q1 = gn1(y + Rat(1));
        if (!(p1 < target_lo)) {
            record(tr, "minimality: g^-(n-1)(x-1) >= h^-1(x-1)", p1, ">=", target_lo);
        } else {
            record(tr, "minimality: g^-(n-1)(y+1) <= h^-1(y+1)", q1, "<=", target_hi);
        }
    }

    const PLMap w = compose(hinv, g.pow(n));
    record(tr, "w(h^-1(x-1)) > h^-1(x-1)", w(target_lo), ">", target_lo);
    record(tr, "w(x) < x", w(x), "<", x);
    record(tr, "w(y) > y", w(y), ">", y);
    record(tr, "w(h^-1(y+1)) < h^-1(y+1)", w(target_hi), "<", target_hi);

    report.witness = w;
    report.witness_expression = "h^-1 g^" + std::to_string(n);
    report.separating_intervals = {{target_lo, x}, {x, y}, {y, target_hi}};
    finalize_report(report);
}

// Case 4a: g of type (+,-,+), f(y) < y. The two-sided construction
// s = h^n f_v h^-n, t = g^-m f_u g^m, witness t s^-1; u and v come from the
// context ball with u(y) < x and v(x) > y.
void construct_4a(WitnessReport& report, const PLMap& g, const PLMap& f, const Rat& x, const Rat& y,
                  const GroupBall* context, const WitnessOptions& options) {
    if (context == nullptr)
        throw MissingAuxiliary(
            "case 4a needs a context ball to search for u with u(y) < x and v with v(x) > y");

    const Rat xt = f(x);  // lower fixed point of h
    const Rat yt = f(y);  // upper fixed point of h

    const BallEntry* u_entry = nullptr;
    const BallEntry* v_entry = nullptr;
    for (const auto& entry : context->entries()) {
        if (!entry.element.orientation_preserving()) continue;
        if (!u_entry && entry.element(y) < x) u_entry = &entry;
        if (!v_entry && entry.element(x) > y) v_entry = &entry;
        if (u_entry && v_entry) break;
    }
    if (!u_entry)
        throw MissingAuxiliary("no orientation-preserving u with u(y) < x in the context ball (radius " +
                               std::to_string(context->radius()) + ")");
    if (!v_entry)
        throw MissingAuxiliary("no orientation-preserving v with v(x) > y in the context ball (radius " +
                               std::to_string(context->radius()) + ")");
    const PLMap& u = u_entry->element;
    const PLMap& v = v_entry->element;

    const PLMap h = compose(compose(f, g), f.inverse());
    const PLMap fu = compose(compose(u, g), u.inverse());
    const PLMap fv = compose(compose(v, g), v.inverse());
    report.elements.push_back(NamedMap{"h", "f g f^-1", h});
    report.elements.push_back(NamedMap{"u", u_entry->word.str(context->generator_names()), u});
    report.elements.push_back(NamedMap{"v", v_entry->word.str(context->generator_names()), v});
    report.elements.push_back(NamedMap{"f_u", "u g u^-1", fu});
    report.elements.push_back(NamedMap{"f_v", "v g v^-1", fv});

    auto& tr = report.trace;
    // order relation u(x) < u(y) < x < f(x) < f(y) < y < v(x) < v(y)
    record(tr, "u(x) < u(y)", u(x), "<", u(y));
    record(tr, "u(y) < x", u(y), "<", x);
    record(tr, "x < f(x)", x, "<", xt);
    record(tr, "f(x) < f(y)", xt, "<", yt);
    record(tr, "f(y) < y", yt, "<", y);
    record(tr, "y < v(x)", y, "<", v(x));
    record(tr, "v(x) < v(y)", v(x), "<", v(y));

    const PLMap hinv = h.inverse();
    const PLMap ginv = g.inverse();
    const PLMap fvinv = fv.inverse();

    // n1: h^-n(x) escapes below f_v^-1(x); n2: h^n(f_v(f(y))) passes y+2.
    const Rat fvinv_x = fvinv(x);
    Rat a = x;
    const long n1 = minimal_exponent(
        options.exponent_cap, "h^-n(x) < f_v^-1(x)", [&] { return a < fvinv_x; },
        [&] { a = hinv(a); });
    Rat b = fv(yt);
    const Rat y_plus_2 = y + Rat(2);
    const long n2 = minimal_exponent(
        options.exponent_cap, "h^n(f_v(f(y))) > y+2", [&] { return b > y_plus_2; },
        [&] { b = h(b); });
    const long n = std::max(n1, n2);

    // m1: g^-m(f_u(x)) passes above f(y); m2: g^-m(f_u(y)) drops below y+1.
    Rat c = fu(x);
    const long m1 = minimal_exponent(
        options.exponent_cap, "g^-m(f_u(x)) > f(y)", [&] { return c > yt; }, [&] { c = ginv(c); });
    Rat d = fu(y);
    const Rat y_plus_1 = y + Rat(1);
    const long m2 = minimal_exponent(
        options.exponent_cap, "g^-m(f_u(y)) < y+1", [&] { return d < y_plus_1; },
        [&] { d = ginv(d); });
    const long m = std::max(m1, m2);

    report.exponent_n = n;
    report.exponent_m = m;

    const PLMap hn = h.pow(n);
    const PLMap gm = g.pow(m);
    const PLMap gm_inv = gm.inverse();
    const PLMap s = compose(compose(hn, fv), hn.inverse());
    const PLMap t = compose(compose(gm_inv, fu), gm);
    report.elements.push_back(
        NamedMap{"s", "h^" + std::to_string(n) + " f_v h^-" + std::to_string(n), s});
    report.elements.push_back(
        NamedMap{"t", "g^-" + std::to_string(m) + " f_u g^" + std::to_string(m), t});

    record(tr, "s(x) < f(x)", s(x), "<", xt);
    record(tr, "s(y) > y+2", s(y), ">", y_plus_2);
    record(tr, "t(x) > f(y)", t(x), ">", yt);
    record(tr, "t(y) < y+1", t(y), "<", y_plus_1);

    // Fix(s) and Fix(t) are conjugate images of Fix(g); recompute exactly.
    const Rat z1 = gm_inv(u(x));
    const Rat z2 = hn(v(y));
    const FixedSet fix_s = s.fixed_set();
    const FixedSet fix_t = t.fixed_set();
    const FixedSet expect_s = FixedSet::from_points({hn(v(x)), hn(v(y))});
    const FixedSet expect_t = FixedSet::from_points({gm_inv(u(x)), gm_inv(u(y))});
    if (!(fix_s == expect_s))
        throw ReductionFailed("Fix(s) != h^n(Fix(f_v)): " + fix_s.str() + " vs " + expect_s.str());
    if (!(fix_t == expect_t))
        throw ReductionFailed("Fix(t) != g^-m(Fix(f_u)): " + fix_t.str() + " vs " + expect_t.str());

    record(tr, "z1 < x", z1, "<", x);
    record(tr, "y < z2", y, "<", z2);
    // four sign comparisons certifying the fixed points of t s^-1
    record(tr, "t(z1) = z1", t(z1), "=", z1);
    record(tr, "t(z1) < s(z1)", t(z1), "<", s(z1));
    record(tr, "t(x) > s(x)", t(x), ">", s(x));
    record(tr, "t(y) < s(y)", t(y), "<", s(y));
    record(tr, "s(z2) = z2", s(z2), "=", z2);
    record(tr, "t(z2) > s(z2)", t(z2), ">", s(z2));

    report.witness = compose(t, s.inverse());
    report.witness_expression = "t s^-1";

    // The sign changes locate fixed points between consecutive s-images;
    // report the landmark intervals (z1,x), (x,y), (y,z2) when the exact
    // fixed set confirms them, the certified brackets otherwise.
    const FixedSet wfix = report.witness.fixed_set();
    if (interval_contains_fixed_point(wfix, z1, x) && interval_contains_fixed_point(wfix, x, y) &&
        interval_contains_fixed_point(wfix, y, z2)) {
        report.separating_intervals = {{z1, x}, {x, y}, {y, z2}};
    } else {
        report.separating_intervals = {{s(z1), s(x)}, {s(x), s(y)}, {s(y), z2}};
    }
    finalize_report(report);
}

WitnessReport construct_impl(const PLMap& g, const PLMap& f, const GroupBall* context,
                             const WitnessOptions& options, int depth);

// The off-side configurations hand off to their sibling after one conjugation
// step; the adjusted pair re-enters the pipeline exactly once.
WitnessReport reduce_and_recurse(CaseTag from, CaseTag expected, const PLMap& g2, const PLMap& f2,
                                 std::string note, const GroupBall* context,
                                 const WitnessOptions& options, int depth) {
    WitnessReport report = construct_impl(g2, f2, context, options, depth + 1);
    if (report.executed_case != expected)
        throw ReductionFailed("reduction from case " + to_string(from) + " landed in case " +
                              to_string(report.executed_case) + ", expected " + to_string(expected));
    report.initial_case = from;
    report.reductions.insert(report.reductions.begin(), std::move(note));
    return report;
}

WitnessReport construct_impl(const PLMap& g, const PLMap& f, const GroupBall* context,
                             const WitnessOptions& options, int depth) {
    if (depth > 1) throw ReductionFailed("case reduction did not terminate in one step");

    const CaseTag tag = classify_case(g, f);
    const auto [x, y] = two_fixed_points(g);

    WitnessReport report;
    report.initial_case = tag;
    report.executed_case = tag;
    report.elements.push_back(NamedMap{"g", "input", g});
    report.elements.push_back(NamedMap{"f", "input", f});

    switch (tag) {
        case CaseTag::c1b:
            construct_1b(report, g, f, x, y);
            return report;
        case CaseTag::c2a:
            construct_2a(report, g, f, x, y, options);
            return report;
        case CaseTag::c3a:
            construct_3a(report, g, f, x, y, options);
            return report;
        case CaseTag::c4a:
            construct_4a(report, g, f, x, y, context, options);
            return report;

        case CaseTag::c1a: {
            // h = f g f^-1 still moves x into (x,y) but pushes y up: case 1b.
            const PLMap h = compose(compose(f, g), f.inverse());
            std::vector<TraceCheck> tr;
            record(tr, "reduction 1a->1b: h(x) > x", h(x), ">", x);
            record(tr, "reduction 1a->1b: h(x) < y", h(x), "<", y);
            record(tr, "reduction 1a->1b: h(y) > y", h(y), ">", y);
            WitnessReport out =
                reduce_and_recurse(CaseTag::c1a, CaseTag::c1b, g, h,
                                   "case 1a reduces to 1b with f' = f g f^-1", context, options, depth);
            out.trace.insert(out.trace.begin(), tr.begin(), tr.end());
            return out;
        }
        case CaseTag::c2b: {
            // h^-1 moves x into (x,y) and pulls y down: back to case 2a.
            const PLMap h = compose(compose(f, g), f.inverse());
            const PLMap hinv = h.inverse();
            std::vector<TraceCheck> tr;
            record(tr, "reduction 2b->2a: h^-1(x) > x", hinv(x), ">", x);
            record(tr, "reduction 2b->2a: h^-1(x) < y", hinv(x), "<", y);
            record(tr, "reduction 2b->2a: h^-1(y) < y", hinv(y), "<", y);
            WitnessReport out = reduce_and_recurse(CaseTag::c2b, CaseTag::c2a, g, hinv,
                                                   "case 2b reduces to 2a with f' = (f g f^-1)^-1",
                                                   context, options, depth);
            out.trace.insert(out.trace.begin(), tr.begin(), tr.end());
            return out;
        }
        case CaseTag::c3b: {
            // both roles swap: g' = f g f^-1 (fixing f(x) < f(y)) and f' = g.
            const PLMap h = compose(compose(f, g), f.inverse());
            const Rat xp = f(x);
            const Rat yp = f(y);
            std::vector<TraceCheck> tr;
            record(tr, "reduction 3b->3a: g(f(x)) > f(x)", g(xp), ">", xp);
            record(tr, "reduction 3b->3a: g(f(x)) < f(y)", g(xp), "<", yp);
            record(tr, "reduction 3b->3a: g(f(y)) < f(y)", g(yp), "<", yp);
            WitnessReport out =
                reduce_and_recurse(CaseTag::c3b, CaseTag::c3a, h, g,
                                   "case 3b swaps the pair: g' = f g f^-1, f' = g", context, options,
                                   depth);
            out.trace.insert(out.trace.begin(), tr.begin(), tr.end());
            return out;
        }
        case CaseTag::c4b: {
            // h moves x into (x,y) and pulls y down: back to case 4a.
            const PLMap h = compose(compose(f, g), f.inverse());
            std::vector<TraceCheck> tr;
            record(tr, "reduction 4b->4a: h(x) > x", h(x), ">", x);
            record(tr, "reduction 4b->4a: h(x) < y", h(x), "<", y);
            record(tr, "reduction 4b->4a: h(y) < y", h(y), "<", y);
            WitnessReport out =
                reduce_and_recurse(CaseTag::c4b, CaseTag::c4a, g, h,
                                   "case 4b reduces to 4a with f' = f g f^-1", context, options, depth);
            out.trace.insert(out.trace.begin(), tr.begin(), tr.end());
            return out;
        }
    }
    throw PreconditionError("unreachable case tag");
}

}  // namespace

std::string to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::c1a: return "1a";
        case CaseTag::c1b: return "1b";
        case CaseTag::c2a: return "2a";
        case CaseTag::c2b: return "2b";
        case CaseTag::c3a: return "3a";
        case CaseTag::c3b: return "3b";
        case CaseTag::c4a: return "4a";
        case CaseTag::c4b: return "4b";
    }
    return "?";
}

bool trace_holds(const TraceCheck& c) {
    if (c.rel == "<") return c.lhs < c.rhs;
    if (c.rel == ">") return c.lhs > c.rhs;
    if (c.rel == "<=") return c.lhs <= c.rhs;
    if (c.rel == ">=") return c.lhs >= c.rhs;
    if (c.rel == "=") return c.lhs == c.rhs;
    if (c.rel == "!=") return !(c.lhs == c.rhs);
    return false;
}

bool replay_trace(const WitnessReport& report) {
    for (const auto& c : report.trace) {
        if (!trace_holds(c)) return false;
    }
    return true;
}

NormalizedElement normalize_direction(const PLMap& g) {
    const TypeSignature t = type_signature(g);
    if (t.signs.size() != 3)
        throw PreconditionError("normalize_direction needs exactly two fixed points, type has " +
                                std::to_string(t.signs.size()) + " signs");
    const auto [x, y] = two_fixed_points(g);
    if (type_row(t) != 0) return NormalizedElement{g, false, t, x, y};
    const PLMap gi = g.inverse();
    const TypeSignature ti = t.flipped();
    assert(type_row(ti) != 0);
    return NormalizedElement{gi, true, ti, x, y};
}

PLMap orient_mover(const PLMap& g, const PLMap& f) {
    const auto [x, y] = two_fixed_points(g);
    const Rat fx = f(x);
    if (!(x < fx && fx < y))
        throw PreconditionError("f must send the lower fixed point into (x, y); f(x) = " + fx.str());

    PLMap candidate = f;
    if (!f.orientation_preserving()) {
        const PLMap phi = compose(compose(f, g), f.inverse());
        const Rat px = phi(x);
        if (px == x)
            throw DegenerateConfiguration(
                "phi = f g f^-1 fixes x, forcing f^-1(x) = y; inconsistent input configuration");
        if (x < px && px < y) {
            candidate = phi;
        } else {
            const PLMap phi_inv = phi.inverse();
            const Rat qx = phi_inv(x);
            if (!(x < qx && qx < y))
                throw DegenerateConfiguration("neither phi nor phi^-1 moves x into (x, y)");
            candidate = phi_inv;
        }
    }
    if (candidate(y) == y)
        throw DegenerateConfiguration(
            "the mover fixes y, so <g, f> would act with a global fixed point and x would be globally "
            "fixed as well; inconsistent input configuration");
    return candidate;
}

CaseTag classify_case(const PLMap& g, const PLMap& f) {
    const TypeSignature t = type_signature(g);
    const int row = type_row(t);
    if (row == 0)
        throw PreconditionError("g is not normalized: type " + t.str() +
                                " is not one of (+,+,+), (-,+,+), (+,+,-), (+,-,+)");
    const auto [x, y] = two_fixed_points(g);
    if (!f.orientation_preserving())
        throw PreconditionError("f must preserve orientation (apply orient_mover first)");
    const Rat fx = f(x);
    if (!(x < fx && fx < y))
        throw PreconditionError("f must send x into (x, y); f(x) = " + fx.str());
    const Rat fy = f(y);
    if (fy == y) throw PreconditionError("f(y) = y is a degenerate configuration");
    return make_tag(row, fy < y);
}

WitnessReport construct_witness(const PLMap& g, const PLMap& f, const GroupBall* context,
                                const WitnessOptions& options) {
    return construct_impl(g, f, context, options, 0);
}

WitnessReport witness_pipeline(const PLMap& g, const PLMap& f, const GroupBall* context,
                               const WitnessOptions& options) {
    const NormalizedElement norm = normalize_direction(g);
    const PLMap mover = orient_mover(norm.map, f);
    WitnessReport report = construct_witness(norm.map, mover, context, options);
    report.input_inverted = norm.inverted;
    if (norm.inverted)
        report.reductions.insert(report.reductions.begin(),
                                 "g replaced by g^-1 to normalize its type to " + norm.type.str());
    return report;
}

WanderingVerdict wandering_check(const PLMap& g, const GroupBall& ball) {
    const auto [x, y] = two_fixed_points(g);
    for (const auto& entry : ball.entries()) {
        const Rat wx = entry.element(x);
        if (x < wx && wx < y) return WanderingVerdict{false, ball.radius(), x, y, entry};
    }
    return WanderingVerdict{true, ball.radius(), x, y, std::nullopt};
}

}  // namespace plh
