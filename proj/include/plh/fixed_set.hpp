#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plh/rat.hpp"

namespace plh {

/// Exact solution set of g(x) = x: a sorted sequence of maximal, pairwise
/// disjoint closed components. A component with equal endpoints is an
/// isolated fixed point; a missing endpoint means the component is unbounded
/// on that side (maps with identity tails fix whole rays).
class FixedSet {
public:
    struct Component {
        std::optional<Rat> lo;  // nullopt: unbounded below
        std::optional<Rat> hi;  // nullopt: unbounded above
        bool is_point() const { return lo && hi && *lo == *hi; }
        bool contains(const Rat& x) const {
            return (!lo || *lo <= x) && (!hi || x <= *hi);
        }
        bool operator==(const Component&) const = default;
    };

    FixedSet() = default;

    static FixedSet whole_line();
    static FixedSet from_points(std::vector<Rat> points);
    /// Sorts, validates (lo <= hi where bounded) and merges touching components.
    static FixedSet from_components(std::vector<Component> comps);

    const std::vector<Component>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }
    bool is_whole_line() const;
    /// True when every component is an isolated point.
    bool finite() const;
    std::size_t point_count() const;
    /// The sorted points; requires finite().
    std::vector<Rat> points() const;
    bool contains(const Rat& x) const;

    std::string str() const;
    bool operator==(const FixedSet&) const = default;

private:
    std::vector<Component> comps_;
};

FixedSet intersect(const FixedSet& a, const FixedSet& b);

/// A point of `c` not covered by `s`, if one exists.
std::optional<Rat> uncovered_point(const FixedSet::Component& c, const FixedSet& s);

}  // namespace plh
