#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plh/fixed_set.hpp"
#include "plh/rat.hpp"

namespace plh {

struct Anchor {
    Rat x;
    Rat y;
    auto operator<=>(const Anchor&) const = default;
};

enum class Sign { plus, minus };

inline Sign flipped(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

/// Sign vector of g - id on the complementary intervals of a finite fixed set,
/// listed left to right (n fixed points give n+1 signs).
struct TypeSignature {
    std::vector<Sign> signs;

    TypeSignature flipped() const;
    std::string str() const;  // e.g. "(+,-,+)"
    bool operator==(const TypeSignature&) const = default;
};

namespace detail {

// Shared representation: anchor polyline plus tail slopes. No validity
// assumptions beyond what each caller established.
struct PLData {
    std::vector<Anchor> anchors;
    Rat left;
    Rat right;
    bool operator==(const PLData&) const = default;
    auto operator<=>(const PLData&) const = default;
};

Rat eval(const PLData& d, const Rat& x);
// Keeps exactly the kink anchors; a kink-free non-identity map is pinned to a
// single anchor at breakpoint 0 so equal functions share one representation.
void canonicalize(PLData& d);
// outer-after-inner; inner must be monotone (strict either direction, or
// non-decreasing with positive tail slopes).
PLData compose(const PLData& outer, const PLData& inner);

}  // namespace detail

/// Piecewise-linear homeomorphism of the real line with rational data, stored
/// in canonical form: two maps are equal as functions iff their canonical
/// forms are identical.
class PLMap {
public:
    PLMap();  // identity

    static PLMap identity() { return PLMap(); }
    /// x -> a x + b; a must be nonzero (negative a gives a reversing map).
    static PLMap affine(const Rat& a, const Rat& b);
    /// Validates strict monotonicity and canonicalizes. An empty anchor list
    /// together with equal tail slopes denotes x -> slope * x.
    static PLMap from_anchors(std::vector<Anchor> anchors, Rat left_slope, Rat right_slope);

    const std::vector<Anchor>& anchors() const { return d_.anchors; }
    const Rat& left_slope() const { return d_.left; }
    const Rat& right_slope() const { return d_.right; }

    bool orientation_preserving() const { return d_.left.sign() > 0; }
    bool is_identity() const;
    bool is_affine() const;
    /// For an affine map, the (slope, intercept) pair.
    std::pair<Rat, Rat> affine_coefficients() const;

    Rat operator()(const Rat& x) const { return detail::eval(d_, x); }

    PLMap inverse() const;
    PLMap pow(long n) const;
    FixedSet fixed_set() const;

    bool operator==(const PLMap&) const = default;
    auto operator<=>(const PLMap&) const = default;

    /// Internal representation; read-only.
    const detail::PLData& data() const { return d_; }

private:
    friend PLMap compose(const PLMap&, const PLMap&);
    friend class MonotonePL;
    explicit PLMap(detail::PLData d) : d_(std::move(d)) {}
    detail::PLData d_;
};

/// outer ∘ inner, canonicalized.
PLMap compose(const PLMap& outer, const PLMap& inner);

/// Sign vector of g - id on the complement of the (finite) fixed set, sampled
/// exactly at one interior rational per complementary interval.
/// Throws NotOrientationPreserving / IdentityMapError / InfiniteFixedSet.
TypeSignature type_signature(const PLMap& g);

/// Image of a fixed set under a homeomorphism (order reversed when f reverses).
FixedSet apply(const PLMap& f, const FixedSet& s);

/// Non-decreasing proper PL map: plateaus allowed, tail slopes strictly
/// positive, so the map is onto the whole line.
class MonotonePL {
public:
    MonotonePL();  // identity

    static MonotonePL identity() { return MonotonePL(); }
    static MonotonePL from_anchors(std::vector<Anchor> anchors, Rat left_slope, Rat right_slope);
    static MonotonePL from_homeomorphism(const PLMap& g);  // g must preserve orientation

    const std::vector<Anchor>& anchors() const { return d_.anchors; }
    const Rat& left_slope() const { return d_.left; }
    const Rat& right_slope() const { return d_.right; }

    Rat operator()(const Rat& x) const { return detail::eval(d_, x); }

    bool is_identity() const;
    /// Maximal intervals on which the map is constant.
    std::vector<std::pair<Rat, Rat>> plateaus() const;
    /// Strictly increasing maps convert back to homeomorphisms.
    std::optional<PLMap> to_homeomorphism() const;

    bool operator==(const MonotonePL&) const = default;

    /// Internal representation; read-only.
    const detail::PLData& data() const { return d_; }

private:
    friend MonotonePL compose(const MonotonePL&, const MonotonePL&);
    friend MonotonePL compose(const MonotonePL&, const PLMap&);
    explicit MonotonePL(detail::PLData d) : d_(std::move(d)) {}
    detail::PLData d_;
};

MonotonePL compose(const MonotonePL& outer, const MonotonePL& inner);
/// outer ∘ inner; the homeomorphism side must preserve orientation.
MonotonePL compose(const MonotonePL& outer, const PLMap& inner);
MonotonePL compose(const PLMap& outer, const MonotonePL& inner);

}  // namespace plh
