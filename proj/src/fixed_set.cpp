#include "plh/fixed_set.hpp"

#include <algorithm>

#include "plh/errors.hpp"

namespace plh {

namespace {

// Comparison on lower endpoints, nullopt = -infinity.
bool lo_less(const std::optional<Rat>& a, const std::optional<Rat>& b) {
    if (!a) return static_cast<bool>(b);
    if (!b) return false;
    return *a < *b;
}

// prev.hi touches or overlaps next.lo (closed components).
bool touches(const std::optional<Rat>& prev_hi, const std::optional<Rat>& next_lo) {
    if (!prev_hi || !next_lo) return true;
    return *next_lo <= *prev_hi;
}

// hi-side max, nullopt = +infinity.
std::optional<Rat> hi_max(const std::optional<Rat>& a, const std::optional<Rat>& b) {
    if (!a || !b) return std::nullopt;
    return *a < *b ? b : a;
}

}  // namespace

FixedSet FixedSet::whole_line() {
    FixedSet s;
    s.comps_.push_back(Component{std::nullopt, std::nullopt});
    return s;
}

FixedSet FixedSet::from_points(std::vector<Rat> points) {
    std::vector<Component> comps;
    comps.reserve(points.size());
    for (auto& p : points) comps.push_back(Component{p, p});
    return from_components(std::move(comps));
}

FixedSet FixedSet::from_components(std::vector<Component> comps) {
    for (const auto& c : comps) {
        if (c.lo && c.hi && *c.hi < *c.lo) throw ValidationError("fixed-set component with hi < lo");
    }
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.lo != b.lo) return lo_less(a.lo, b.lo);
        // shorter (more bounded) first; exact tie handled by merge anyway
        if (!a.hi || !b.hi) return static_cast<bool>(a.hi);
        return *a.hi < *b.hi;
    });
    FixedSet s;
    for (auto& c : comps) {
        if (!s.comps_.empty() && touches(s.comps_.back().hi, c.lo)) {
            s.comps_.back().hi = hi_max(s.comps_.back().hi, c.hi);
        } else {
            s.comps_.push_back(std::move(c));
        }
    }
    return s;
}

bool FixedSet::is_whole_line() const {
    return comps_.size() == 1 && !comps_[0].lo && !comps_[0].hi;
}

bool FixedSet::finite() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Component& c) { return c.is_point(); });
}

std::size_t FixedSet::point_count() const {
    std::size_t n = 0;
    for (const auto& c : comps_)
        if (c.is_point()) ++n;
    return n;
}

std::vector<Rat> FixedSet::points() const {
    std::vector<Rat> pts;
    pts.reserve(comps_.size());
    for (const auto& c : comps_) {
        if (!c.is_point()) throw PreconditionError("points() on a fixed set with interval components");
        pts.push_back(*c.lo);
    }
    return pts;
}

bool FixedSet::contains(const Rat& x) const {
    for (const auto& c : comps_) {
        if (c.contains(x)) return true;
        if (c.lo && x < *c.lo) break;
    }
    return false;
}

std::string FixedSet::str() const {
    if (comps_.empty()) return "{}";
    std::string out = "{";
    bool first = true;
    for (const auto& c : comps_) {
        if (!first) out += ", ";
        first = false;
        if (c.is_point()) {
            out += c.lo->str();
        } else {
            out += c.lo ? "[" + c.lo->str() : "(-inf";
            out += ", ";
            out += c.hi ? c.hi->str() + "]" : "+inf)";
        }
    }
    return out + "}";
}

FixedSet intersect(const FixedSet& a, const FixedSet& b) {
    std::vector<FixedSet::Component> out;
    std::size_t i = 0, j = 0;
    const auto& ca = a.components();
    const auto& cb = b.components();
    while (i < ca.size() && j < cb.size()) {
        const auto& x = ca[i];
        const auto& y = cb[j];
        // overlap = [max(lo), min(hi)] when non-empty
        std::optional<Rat> lo = lo_less(x.lo, y.lo) ? y.lo : x.lo;
        std::optional<Rat> hi;
        bool x_ends_first;
        if (!x.hi && !y.hi) {
            hi = std::nullopt;
            x_ends_first = true;  // either; both exhausted below
        } else if (!x.hi) {
            hi = y.hi;
            x_ends_first = false;
        } else if (!y.hi) {
            hi = x.hi;
            x_ends_first = true;
        } else {
            x_ends_first = *x.hi <= *y.hi;
            hi = x_ends_first ? x.hi : y.hi;
        }
        if (!lo || !hi || *lo <= *hi) out.push_back({lo, hi});
        if (!x.hi && !y.hi) break;
        if (x_ends_first) ++i; else ++j;
    }
    return FixedSet::from_components(std::move(out));
}

std::optional<Rat> uncovered_point(const FixedSet::Component& c, const FixedSet& s) {
    // Finite candidate test: the uncovered part of c (a finite union with
    // endpoints among the endpoints of c and of s) must contain a candidate.
    std::vector<Rat> endpoints;
    if (c.lo) endpoints.push_back(*c.lo);
    if (c.hi) endpoints.push_back(*c.hi);
    for (const auto& d : s.components()) {
        if (d.lo) endpoints.push_back(*d.lo);
        if (d.hi) endpoints.push_back(*d.hi);
    }
    std::sort(endpoints.begin(), endpoints.end());
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());

    std::vector<Rat> candidates;
    if (endpoints.empty()) {
        candidates.push_back(Rat(0));
    } else {
        candidates.push_back(endpoints.front() - Rat(1));
        for (std::size_t i = 0; i < endpoints.size(); ++i) {
            candidates.push_back(endpoints[i]);
            if (i + 1 < endpoints.size()) candidates.push_back(midpoint(endpoints[i], endpoints[i + 1]));
        }
        candidates.push_back(endpoints.back() + Rat(1));
    }
    for (const auto& p : candidates) {
        if (c.contains(p) && !s.contains(p)) return p;
    }
    return std::nullopt;
}

}  // namespace plh
