#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plh/group_ball.hpp"
#include "plh/pl_map.hpp"

namespace plh {

/// Configuration class of a (g, f) pair: the normalized type of g crossed
/// with the side on which f moves the upper fixed point.
enum class CaseTag { c1a, c1b, c2a, c2b, c3a, c3b, c4a, c4b };

std::string to_string(CaseTag tag);

/// One exact comparison performed during a construction; `rel` is one of
/// "<", ">", "<=", ">=", "=", "!=".
struct TraceCheck {
    std::string what;
    Rat lhs;
    std::string rel;
    Rat rhs;
};

bool trace_holds(const TraceCheck& c);

struct NamedMap {
    std::string name;
    std::string definition;  // composition expression over previously named maps
    PLMap map;
};

struct WitnessOptions {
    long exponent_cap = 10000;
};

/// A constructed group element with at least three fixed points, together
/// with the full construction: named intermediates, the exponents found by
/// minimal search, the exact inequality trace, and the separating intervals.
/// The fixed set is always recomputed from scratch, never taken on faith.
struct WitnessReport {
    CaseTag initial_case;
    CaseTag executed_case;
    bool input_inverted = false;  // set by witness_pipeline when g was replaced by its inverse
    std::vector<std::string> reductions;
    std::vector<NamedMap> elements;
    std::string witness_expression;
    std::optional<long> exponent_n;
    std::optional<long> exponent_m;
    PLMap witness;
    FixedSet fixed_points;
    std::vector<std::pair<Rat, Rat>> separating_intervals;  // three open intervals
    std::vector<TraceCheck> trace;
};

/// Re-evaluates every comparison in the trace; true when all hold.
bool replay_trace(const WitnessReport& report);

struct NormalizedElement {
    PLMap map;
    bool inverted;
    TypeSignature type;
    Rat x;  // lower fixed point
    Rat y;  // upper fixed point
};

/// Replaces g by g^-1 when needed so the type lands in
/// {(+,+,+), (-,+,+), (+,+,-), (+,-,+)}. Requires exactly two fixed points.
NormalizedElement normalize_direction(const PLMap& g);

/// Returns an orientation-preserving element of <g, f> sending x into (x, y):
/// f itself, or phi = f g f^-1, or phi^-1 (f preferred, then phi, then
/// phi^-1). Throws DegenerateConfiguration when the configuration forces a
/// global fixed point.
PLMap orient_mover(const PLMap& g, const PLMap& f);

/// Requires g normalized, f orientation-preserving with f(x) in (x, y) and
/// f(y) != y.
CaseTag classify_case(const PLMap& g, const PLMap& f);

/// Executes the case construction (after at most one sibling-case reduction)
/// and returns a verified report. The context ball is required for case 4a/4b
/// where the auxiliary displacements u, v are searched.
WitnessReport construct_witness(const PLMap& g, const PLMap& f, const GroupBall* context = nullptr,
                                const WitnessOptions& options = {});

/// normalize_direction + orient_mover + construct_witness in one call.
WitnessReport witness_pipeline(const PLMap& g, const PLMap& f, const GroupBall* context = nullptr,
                               const WitnessOptions& options = {});

struct WanderingVerdict {
    bool holds_on_ball;
    int radius;
    Rat x;
    Rat y;
    std::optional<BallEntry> mover;  // an element sending x into (x, y)
};

/// Scans the ball for an element moving x into (x, y); a mover refutes the
/// wandering hypothesis and feeds construct_witness.
WanderingVerdict wandering_check(const PLMap& g, const GroupBall& ball);

}  // namespace plh
