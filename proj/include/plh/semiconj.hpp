#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plh/group_ball.hpp"
#include "plh/pl_map.hpp"
#include "plh/witness.hpp"

namespace plh {

/// Exact bracket for the translation number of an element relative to the
/// orbit grid of a reference element g0: locating w^n(x0) between consecutive
/// grid points g0^p(x0) gives tau in [p/n, (p+1)/n]. A degenerate bracket is
/// reported when w^n(x0) hits the grid exactly and w commutes with g0.
struct TauEstimate {
    Rat lo;
    Rat hi;
    long iterations;
    PLMap reference;
    Rat base_point;
};

struct ChartEntry {
    PLMap element;
    Word word;
    Rat at_base;  // element(x0)
    TauEstimate tau;
};

using TranslationChart = std::vector<ChartEntry>;

/// Requires g0 in the ball, fixed-point-free, with g0(x0) > x0. Throws
/// NotFree when some ball element has a fixed point.
TranslationChart translation_chart(const GroupBall& ball, const PLMap& g0, const Rat& x0,
                                   long iterations);

struct ChartMonotonicity {
    bool compatible;
    std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
};

/// Order of w(x0) must agree with the order of the tau brackets; strict
/// reversal with disjoint brackets is a violation.
ChartMonotonicity chart_monotonicity(const TranslationChart& chart);

/// Exact functional identity image∘h = h∘g for every pair; no tolerance.
bool verify_equivariance(const MonotonePL& h, const std::vector<std::pair<PLMap, PLMap>>& pairs);

/// The monotone proper map that collapses each interval to a point and has
/// slope 1 off the intervals. Throws OverlapError when closures intersect.
MonotonePL collapse_map(std::vector<std::pair<Rat, Rat>> intervals);

/// The collapsed image of g: the homeomorphism theta with theta∘h = h∘g,
/// exactly, when h identifies points compatibly with g. Returns nullopt (with
/// the reason in *why when provided) if g separates identified points or the
/// quotient map fails to be strictly monotone.
std::optional<PLMap> push_through_collapse(const MonotonePL& h, const PLMap& g,
                                           std::string* why = nullptr);

enum class MinimalKind { finite_orbit, discrete_suspected, dense_suspected, cantor_suspected };

std::string to_string(MinimalKind kind);

/// Heuristic identification of the minimal invariant set at ball scale; only
/// finite_orbit is exact, the other verdicts are suspicions.
struct MinimalReport {
    MinimalKind kind;
    bool heuristic;        // false only for finite_orbit
    FixedSet finite_set;   // the certified finite orbit, when kind == finite_orbit
    std::optional<BallEntry> discrete_element;  // fixed-point-free element whose orbit matches
    Rat max_gap;           // largest gap of the sampled orbit in the window
    std::size_t orbit_size = 0;
    Rat base;
    std::pair<Rat, Rat> window;
    Rat resolution;
};

MinimalReport classify_minimal(const GroupBall& ball, std::pair<Rat, Rat> window,
                               const Rat& resolution);

enum class Verdict {
    global_fixed_abelian,
    affine_semiconjugate,
    translation_semiconjugate,
    violation,
    inconclusive,
};

std::string to_string(Verdict verdict);

struct PipelineOptions {
    int radius = 4;
    int max_fixed = 2;
    std::size_t element_cap = GroupBall::kDefaultElementCap;
    long exponent_cap = 10000;
    long iterations = 200;
    std::pair<Rat, Rat> window{Rat(-10), Rat(10)};
    Rat resolution{1, 100};
    std::optional<PLMap> certificate;  // candidate conjugator onto an affine model
};

/// An exactly verified semi-conjugacy: h together with the (g, theta(g))
/// pairs that passed verify_equivariance.
struct EquivarianceCertificate {
    MonotonePL h;
    std::vector<std::pair<PLMap, PLMap>> pairs;
};

struct ClassificationReport {
    Verdict verdict;
    int radius;
    std::size_t ball_size = 0;
    std::string disclaimer;
    std::optional<FixedSet> global_fixed;
    std::optional<PropertyVerdict> max_fixed_verdict;  // violation found by the N=2 scan
    std::optional<WitnessReport> witness;              // violation built from a moving orbit
    std::optional<EquivarianceCertificate> certificate;
    std::optional<MinimalReport> minimal;
    std::vector<std::string> notes;
};

/// The end-to-end classification pipeline: max-fixed scan, global-fixed-point
/// branch, wandering analysis with witness construction, interval collapse,
/// and the translation/affine split. Verdicts are ball-scale semi-decisions;
/// only `violation` carries a certificate that is conclusive for the group.
ClassificationReport theorem_a_report(const std::vector<PLMap>& generators,
                                      const std::vector<std::string>& names,
                                      const PipelineOptions& options);

}  // namespace plh
