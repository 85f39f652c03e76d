#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plh/pl_map.hpp"

namespace plh {

struct Letter {
    int generator;  // index into the generator list
    int exponent;   // +1 or -1
    bool operator==(const Letter&) const = default;
};

/// Freely reduced word over the generators; reduction is enforced on append.
class Word {
public:
    Word() = default;

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    /// True when the letter would cancel against the current last letter.
    bool cancels(const Letter& l) const;
    Word appended(const Letter& l) const;
    Word inverse() const;

    /// Rendering like "a b^-1 a"; empty word renders as "e".
    std::string str(const std::vector<std::string>& names) const;

    bool operator==(const Word&) const = default;

private:
    std::vector<Letter> letters_;
};

/// Shortest-then-lexicographic order used for deterministic tie-breaks.
bool word_less(const Word& a, const Word& b);

struct BallEntry {
    PLMap element;
    Word word;  // shortest, then lexicographically least, word realizing it
};

/// Deduplicated Cayley ball of a finitely generated group of PL
/// homeomorphisms: exactly the distinct elements realizable by reduced words
/// of length <= radius, each paired with its first word in BFS order.
class GroupBall {
public:
    static constexpr std::size_t kDefaultElementCap = 1000000;

    static GroupBall build(std::vector<PLMap> generators, std::vector<std::string> names,
                           int radius, std::size_t element_cap = kDefaultElementCap);

    const std::vector<BallEntry>& entries() const { return entries_; }
    const std::vector<PLMap>& generators() const { return generators_; }
    const std::vector<std::string>& generator_names() const { return names_; }
    int radius() const { return radius_; }
    std::size_t size() const { return entries_.size(); }

    bool contains(const PLMap& g) const { return index_.count(g) != 0; }
    const BallEntry* find(const PLMap& g) const;

private:
    std::vector<PLMap> generators_;
    std::vector<std::string> names_;
    int radius_ = 0;
    std::vector<BallEntry> entries_;  // BFS order: by word length, then lexicographic
    std::map<PLMap, std::size_t> index_;
};

struct PropertyVerdict {
    bool holds_on_ball;
    int radius;
    struct Violation {
        PLMap element;
        Word word;
        FixedSet fixed;
    };
    std::optional<Violation> violation;
};

/// Scans every non-identity element for more than `max_fixed` fixed points or
/// an interval of fixed points. Only a violation is conclusive.
PropertyVerdict check_max_fixed(const GroupBall& ball, int max_fixed);

/// Intersection of the generators' fixed sets (a point is globally fixed iff
/// every generator fixes it). The empty generator list yields the whole line.
FixedSet global_fixed_points(const GroupBall& ball);

struct OrientationSplit {
    std::vector<BallEntry> preserving;
    std::vector<BallEntry> reversing;
};

OrientationSplit orientation_split(const GroupBall& ball);

struct CommutationVerdict {
    bool holds;
    std::optional<std::pair<std::size_t, std::size_t>> pair;  // generator indices
    std::optional<PLMap> lhs;                                 // g_i g_j
    std::optional<PLMap> rhs;                                 // g_j g_i
};

/// Checks that all generator pairs commute (necessary and sufficient for the
/// generated group to be abelian).
CommutationVerdict is_abelian_on_ball(const GroupBall& ball);

struct GlobalFixedCheck {
    bool holds;
    FixedSet global;
    struct Violation {
        PLMap element;
        Word word;
        Rat point;  // fixed by the element but not globally fixed
    };
    std::optional<Violation> violation;
};

/// For an abelian ball, verifies that every fixed point of every non-identity
/// element is globally fixed. Throws PreconditionError when the generators do
/// not commute.
GlobalFixedCheck abelian_global_fixed_check(const GroupBall& ball);

/// True iff some ball element sends x into the open interval (lo, hi).
bool orbit_hits_interval(const GroupBall& ball, const Rat& x, const Rat& lo, const Rat& hi);

/// The increasing map F = max of the chosen generators and their inverses,
/// together with the bounded interval every orbit provably enters.
class Funnel {
public:
    /// Picks the first max_fixed+1 orientation-preserving generators; throws
    /// SharedFixedPoint when they have a common fixed point and
    /// PreconditionError when too few orientation-preserving generators exist.
    static Funnel build(const std::vector<PLMap>& generators, int max_fixed);

    Rat apply(const Rat& x) const;          // F(x) = max over the family
    Rat apply_inverse(const Rat& x) const;  // min over the family (the family is inverse-closed)
    const Rat& f_zero() const { return f_zero_; }
    /// Open interval (-1, F(0)+1) containing [0, F(0)].
    std::pair<Rat, Rat> interval() const { return {Rat(-1), f_zero_ + Rat(1)}; }
    const std::vector<PLMap>& family() const { return family_; }

    struct Drive {
        Rat core;                // the orbit representative in [0, F(0))
        std::vector<Rat> chain;  // ascending consecutive F-orbit segment joining x and core
    };
    /// Walks the F-orbit of x to its unique representative in [0, F(0)).
    Drive drive_to_core(const Rat& x, std::size_t step_cap = 100000) const;

private:
    std::vector<PLMap> family_;
    Rat f_zero_;
};

}  // namespace plh
