#include "plh/pl_map.hpp"

#include <algorithm>
#include <cassert>

#include "plh/errors.hpp"

namespace plh {

TypeSignature TypeSignature::flipped() const {
    TypeSignature t;
    t.signs.reserve(signs.size());
    for (Sign s : signs) t.signs.push_back(plh::flipped(s));
    return t;
}

std::string TypeSignature::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (i) out += ",";
        out += signs[i] == Sign::plus ? "+" : "-";
    }
    return out + ")";
}

namespace detail {

Rat eval(const PLData& d, const Rat& x) {
    const auto& a = d.anchors;
    if (a.empty()) return d.left * x;  // linear through the origin (identity in canonical form)
    if (x <= a.front().x) return a.front().y + d.left * (x - a.front().x);
    if (x >= a.back().x) return a.back().y + d.right * (x - a.back().x);
    // rightmost anchor with anchor.x <= x
    std::size_t lo = 0, hi = a.size() - 1;
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (a[mid].x <= x) lo = mid; else hi = mid;
    }
    const Rat slope = (a[hi].y - a[lo].y) / (a[hi].x - a[lo].x);
    return a[lo].y + slope * (x - a[lo].x);
}

void canonicalize(PLData& d) {
    auto& a = d.anchors;
    if (!a.empty()) {
        const std::size_t k = a.size();
        std::vector<Rat> slope;
        slope.reserve(k + 1);
        slope.push_back(d.left);
        for (std::size_t i = 1; i < k; ++i) slope.push_back((a[i].y - a[i - 1].y) / (a[i].x - a[i - 1].x));
        slope.push_back(d.right);
        std::vector<Anchor> kept;
        kept.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (slope[i] != slope[i + 1]) kept.push_back(a[i]);
        }
        if (kept.empty()) {
            // kink-free: affine with slope d.left and intercept from any anchor
            assert(d.left == d.right);
            const Rat c = a.front().y - d.left * a.front().x;
            a.clear();
            if (!(d.left == Rat(1) && c.sign() == 0)) a.push_back(Anchor{Rat(0), c});
        } else {
            a = std::move(kept);
        }
    } else if (d.left != Rat(1)) {
        // slope-only linear map: pin the intercept anchor
        a.push_back(Anchor{Rat(0), Rat(0)});
    }
}

namespace {

// All x with inner(x) == t contributed by strictly monotone pieces; plateau
// pieces are bounded by anchors and need no extra candidates.
void preimages(const PLData& inner, const Rat& t, std::vector<Rat>& out) {
    const auto& a = inner.anchors;
    if (a.empty()) {
        out.push_back(t / inner.left);
        return;
    }
    const Rat& v0 = a.front().y;
    if (inner.left.sign() > 0 ? t <= v0 : t >= v0)
        out.push_back(a.front().x + (t - v0) / inner.left);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        const Rat lo = a[i].y < a[i + 1].y ? a[i].y : a[i + 1].y;
        const Rat hi = a[i].y < a[i + 1].y ? a[i + 1].y : a[i].y;
        if (t < lo || t > hi) continue;
        const Rat slope = (a[i + 1].y - a[i].y) / (a[i + 1].x - a[i].x);
        if (slope.sign() != 0) out.push_back(a[i].x + (t - a[i].y) / slope);
    }
    const Rat& vk = a.back().y;
    if (inner.right.sign() > 0 ? t >= vk : t <= vk)
        out.push_back(a.back().x + (t - vk) / inner.right);
}

}  // namespace

PLData compose(const PLData& outer, const PLData& inner) {
    std::vector<Rat> xs;
    xs.reserve(inner.anchors.size() + 2 * outer.anchors.size() + 1);
    for (const auto& an : inner.anchors) xs.push_back(an.x);
    for (const auto& an : outer.anchors) preimages(inner, an.x, xs);
    if (xs.empty()) xs.push_back(Rat(0));  // keep the intercept of affine-affine compositions
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    PLData out;
    out.anchors.reserve(xs.size());
    for (const auto& x : xs) out.anchors.push_back(Anchor{x, eval(outer, eval(inner, x))});
    out.left = inner.left.sign() > 0 ? outer.left * inner.left : outer.right * inner.left;
    out.right = inner.right.sign() > 0 ? outer.right * inner.right : outer.left * inner.right;
    canonicalize(out);
    return out;
}

}  // namespace detail

PLMap::PLMap() : d_{{}, Rat(1), Rat(1)} {}

PLMap PLMap::affine(const Rat& a, const Rat& b) {
    if (a.sign() == 0) throw ValidationError("affine map with zero slope");
    detail::PLData d{{Anchor{Rat(0), b}}, a, a};
    detail::canonicalize(d);
    return PLMap(std::move(d));
}

PLMap PLMap::from_anchors(std::vector<Anchor> anchors, Rat left_slope, Rat right_slope) {
    if (left_slope.sign() == 0 || right_slope.sign() == 0)
        throw ValidationError("tail slopes must be nonzero");
    if (left_slope.sign() != right_slope.sign())
        throw ValidationError("tail slopes must have the same sign");
    if (anchors.empty() && left_slope != right_slope)
        throw ValidationError("a map without anchors must have equal tail slopes");
    const bool increasing = left_slope.sign() > 0;
    for (std::size_t i = 1; i < anchors.size(); ++i) {
        if (!(anchors[i - 1].x < anchors[i].x))
            throw ValidationError("breakpoints must be strictly increasing");
        const bool ok = increasing ? anchors[i - 1].y < anchors[i].y : anchors[i].y < anchors[i - 1].y;
        if (!ok) throw ValidationError("anchor values must be strictly monotone");
    }
    detail::PLData d{std::move(anchors), std::move(left_slope), std::move(right_slope)};
    detail::canonicalize(d);
    return PLMap(std::move(d));
}

bool PLMap::is_identity() const {
    return d_.anchors.empty() && d_.left == Rat(1) && d_.right == Rat(1);
}

bool PLMap::is_affine() const { return d_.anchors.size() <= 1 && d_.left == d_.right; }

std::pair<Rat, Rat> PLMap::affine_coefficients() const {
    if (!is_affine()) throw PreconditionError("affine_coefficients of a non-affine map");
    if (d_.anchors.empty()) return {d_.left, Rat(0)};
    return {d_.left, d_.anchors.front().y - d_.left * d_.anchors.front().x};
}

PLMap PLMap::inverse() const {
    detail::PLData d;
    d.anchors.reserve(d_.anchors.size());
    if (orientation_preserving()) {
        for (const auto& a : d_.anchors) d.anchors.push_back(Anchor{a.y, a.x});
        d.left = d_.left.reciprocal();
        d.right = d_.right.reciprocal();
    } else {
        for (auto it = d_.anchors.rbegin(); it != d_.anchors.rend(); ++it)
            d.anchors.push_back(Anchor{it->y, it->x});
        d.left = d_.right.reciprocal();
        d.right = d_.left.reciprocal();
    }
    detail::canonicalize(d);
    return PLMap(std::move(d));
}

PLMap PLMap::pow(long n) const {
    if (n == 0) return identity();
    PLMap base = n > 0 ? *this : inverse();
    unsigned long e = n > 0 ? static_cast<unsigned long>(n) : 0UL - static_cast<unsigned long>(n);
    PLMap acc = identity();
    while (e) {
        if (e & 1UL) acc = compose(acc, base);
        e >>= 1UL;
        if (e) base = compose(base, base);
    }
    return acc;
}

FixedSet PLMap::fixed_set() const {
    if (is_identity()) return FixedSet::whole_line();
    const auto& a = d_.anchors;
    assert(!a.empty());  // canonical non-identity maps have at least one anchor
    std::vector<FixedSet::Component> comps;

    // One closed piece at a time: base point (p, v), slope s, domain [lo, hi].
    auto solve_piece = [&](const Rat& p, const Rat& v, const Rat& s,
                           const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
        if (s == Rat(1)) {
            if (v == p) comps.push_back(FixedSet::Component{lo, hi});
            return;
        }
        const Rat root = (v - s * p) / (Rat(1) - s);
        if ((!lo || *lo <= root) && (!hi || root <= *hi))
            comps.push_back(FixedSet::Component{root, root});
    };

    solve_piece(a.front().x, a.front().y, d_.left, std::nullopt, a.front().x);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        const Rat s = (a[i + 1].y - a[i].y) / (a[i + 1].x - a[i].x);
        solve_piece(a[i].x, a[i].y, s, a[i].x, a[i + 1].x);
    }
    solve_piece(a.back().x, a.back().y, d_.right, a.back().x, std::nullopt);
    return FixedSet::from_components(std::move(comps));
}

PLMap compose(const PLMap& outer, const PLMap& inner) {
    return PLMap(detail::compose(outer.d_, inner.d_));
}

TypeSignature type_signature(const PLMap& g) {
    if (!g.orientation_preserving())
        throw NotOrientationPreserving("type signature is defined for orientation-preserving maps only");
    if (g.is_identity()) throw IdentityMapError("type signature of the identity is undefined");
    const FixedSet fs = g.fixed_set();
    if (!fs.finite())
        throw InfiniteFixedSet("type signature undefined: fixed set has an interval component");
    const std::vector<Rat> pts = fs.points();

    std::vector<Rat> samples;
    if (pts.empty()) {
        samples.push_back(Rat(0));
    } else {
        samples.push_back(pts.front() - Rat(1));
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) samples.push_back(midpoint(pts[i], pts[i + 1]));
        samples.push_back(pts.back() + Rat(1));
    }

    TypeSignature t;
    t.signs.reserve(samples.size());
    for (const auto& s : samples) {
        const int sgn = (g(s) - s).sign();
        assert(sgn != 0);  // samples are interior to complementary intervals
        t.signs.push_back(sgn > 0 ? Sign::plus : Sign::minus);
    }
    return t;
}

FixedSet apply(const PLMap& f, const FixedSet& s) {
    std::vector<FixedSet::Component> out;
    out.reserve(s.components().size());
    const bool preserving = f.orientation_preserving();
    for (const auto& c : s.components()) {
        std::optional<Rat> lo = c.lo ? std::optional<Rat>(f(*c.lo)) : std::nullopt;
        std::optional<Rat> hi = c.hi ? std::optional<Rat>(f(*c.hi)) : std::nullopt;
        if (!preserving) std::swap(lo, hi);
        out.push_back(FixedSet::Component{std::move(lo), std::move(hi)});
    }
    return FixedSet::from_components(std::move(out));
}

MonotonePL::MonotonePL() : d_{{}, Rat(1), Rat(1)} {}

MonotonePL MonotonePL::from_anchors(std::vector<Anchor> anchors, Rat left_slope, Rat right_slope) {
    if (left_slope.sign() <= 0 || right_slope.sign() <= 0)
        throw ValidationError("a monotone proper map needs strictly positive tail slopes");
    for (std::size_t i = 1; i < anchors.size(); ++i) {
        if (!(anchors[i - 1].x < anchors[i].x))
            throw ValidationError("breakpoints must be strictly increasing");
        if (anchors[i].y < anchors[i - 1].y)
            throw ValidationError("anchor values must be non-decreasing");
    }
    detail::PLData d{std::move(anchors), std::move(left_slope), std::move(right_slope)};
    detail::canonicalize(d);
    return MonotonePL(std::move(d));
}

MonotonePL MonotonePL::from_homeomorphism(const PLMap& g) {
    if (!g.orientation_preserving())
        throw ValidationError("an orientation-reversing map is not monotone non-decreasing");
    return MonotonePL(g.data());
}

bool MonotonePL::is_identity() const {
    return d_.anchors.empty() && d_.left == Rat(1) && d_.right == Rat(1);
}

std::vector<std::pair<Rat, Rat>> MonotonePL::plateaus() const {
    std::vector<std::pair<Rat, Rat>> out;
    const auto& a = d_.anchors;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        if (a[i].y == a[i + 1].y) out.emplace_back(a[i].x, a[i + 1].x);
    }
    return out;
}

std::optional<PLMap> MonotonePL::to_homeomorphism() const {
    const auto& a = d_.anchors;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        if (!(a[i].y < a[i + 1].y)) return std::nullopt;
    }
    return PLMap::from_anchors(a, d_.left, d_.right);
}

MonotonePL compose(const MonotonePL& outer, const MonotonePL& inner) {
    return MonotonePL(detail::compose(outer.data(), inner.data()));
}

MonotonePL compose(const MonotonePL& outer, const PLMap& inner) {
    if (!inner.orientation_preserving())
        throw ValidationError("composition with a reversing inner map is not monotone");
    return MonotonePL(detail::compose(outer.data(), inner.data()));
}

MonotonePL compose(const PLMap& outer, const MonotonePL& inner) {
    if (!outer.orientation_preserving())
        throw ValidationError("composition with a reversing outer map is not monotone");
    return compose(MonotonePL::from_homeomorphism(outer), inner);
}

}  // namespace plh
