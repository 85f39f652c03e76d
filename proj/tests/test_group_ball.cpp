#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "plh/errors.hpp"
#include "plh/group_ball.hpp"

using namespace plh;

namespace {

PLMap mk(std::vector<Anchor> a, Rat l, Rat r) { return PLMap::from_anchors(std::move(a), l, r); }

PLMap g1() {
    return mk({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(3, 4)}, {Rat(1), Rat(1)}}, Rat(1, 2), Rat(2));
}

PLMap thompson_a() {
    return mk({{Rat(0), Rat(0)}, {Rat(1), Rat(1, 2)}, {Rat(2), Rat(2)}}, Rat(1), Rat(1));
}

PLMap thompson_b() {
    return mk({{Rat(1), Rat(1)}, {Rat(3, 2), Rat(5, 4)}, {Rat(2), Rat(2)}}, Rat(1), Rat(1));
}

// independent enumeration of <2x, x+1> over reduced words as exact (a, b) pairs
std::size_t affine_ball_oracle(int radius) {
    using Aff = std::pair<Rat, Rat>;  // x -> a x + b
    const std::vector<Aff> letters = {
        {Rat(2), Rat(0)}, {Rat(1, 2), Rat(0)}, {Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
    std::set<Aff> seen{{Rat(1), Rat(0)}};
    std::vector<std::pair<std::vector<int>, Aff>> frontier{{{}, {Rat(1), Rat(0)}}};
    for (int r = 0; r < radius; ++r) {
        std::vector<std::pair<std::vector<int>, Aff>> next;
        for (const auto& [word, aff] : frontier) {
            for (int l = 0; l < 4; ++l) {
                if (!word.empty() && (word.back() ^ 1) == l) continue;  // inverse pairs are 0^1, 2^3
                auto w = word;
                w.push_back(l);
                // compose: (previous) after (letter)
                Aff combined{aff.first * letters[l].first,
                             aff.first * letters[l].second + aff.second};
                seen.insert(combined);
                next.push_back({std::move(w), std::move(combined)});
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

}  // namespace

TEST_CASE("ball sizes: cyclic, empty, affine") {
    const auto cyc = GroupBall::build({PLMap::affine(Rat(1), Rat(1))}, {}, 3);
    CHECK(cyc.size() == 7);  // x + k, k in [-3, 3]
    for (long k = -3; k <= 3; ++k) CHECK(cyc.contains(PLMap::affine(Rat(1), Rat(k))));

    CHECK(GroupBall::build({}, {}, 5).size() == 1);

    const auto aff = GroupBall::build({PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(1), Rat(1))},
                                      {}, 2);
    CHECK(aff.size() == 17);
    CHECK(aff.size() == affine_ball_oracle(2));
    // one more radius against the oracle
    const auto aff3 = GroupBall::build({PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(1), Rat(1))},
                                       {}, 3);
    CHECK(aff3.size() == affine_ball_oracle(3));
}

TEST_CASE("shortest words, identity first, BFS order") {
    const auto ball = GroupBall::build({PLMap::affine(Rat(1), Rat(1))}, {"t"}, 2);
    REQUIRE(ball.size() == 5);
    CHECK(ball.entries()[0].element.is_identity());
    CHECK(ball.entries()[0].word.empty());
    for (std::size_t i = 1; i < ball.size(); ++i)
        CHECK(ball.entries()[i - 1].word.length() <= ball.entries()[i].word.length());
    const BallEntry* two = ball.find(PLMap::affine(Rat(1), Rat(2)));
    REQUIRE(two);
    CHECK(two->word.str({"t"}) == "t t");
}

TEST_CASE("ball growth is monotone and inverse-closed") {
    oracle::Rng rng(2718);
    const std::vector<PLMap> gens = {rng.preserving_finite(3), rng.preserving_finite(3)};
    const auto small = GroupBall::build(gens, {}, 2);
    const auto large = GroupBall::build(gens, {}, 3);
    for (const auto& e : small.entries()) CHECK(large.contains(e.element));
    for (const auto& e : small.entries()) {
        const BallEntry* inv = small.find(e.element.inverse());
        REQUIRE(inv);
        CHECK(inv->word.length() == e.word.length());
    }
}

TEST_CASE("element cap raises a resource error") {
    CHECK_THROWS_AS(GroupBall::build({PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(1), Rat(1))},
                                     {}, 6, 50),
                    ResourceLimitExceeded);
}

TEST_CASE("degenerate ball inputs") {
    CHECK_THROWS_AS(GroupBall::build({}, {}, -1), ValidationError);
    CHECK_THROWS_AS(GroupBall::build({g1()}, {"a", "b"}, 1), ValidationError);
    // identity generators add nothing
    const auto ball = GroupBall::build({PLMap::identity(), PLMap::affine(Rat(1), Rat(1))}, {}, 2);
    CHECK(ball.size() == 5);
}

TEST_CASE("the affine ball keeps at most one fixed point per element") {
    const std::vector<PLMap> gens = {PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(1), Rat(1))};
    for (int radius : {1, 2, 3, 4}) {
        const auto ball = GroupBall::build(gens, {}, radius);
        CHECK(check_max_fixed(ball, 1).holds_on_ball);
        for (const auto& e : ball.entries()) {
            CHECK(e.element.is_affine());
            if (e.element.is_identity()) continue;
            const auto [a, b] = e.element.affine_coefficients();
            // a != 1 gives exactly one fixed point, a == 1 (b != 0) gives none
            CHECK(e.element.fixed_set().point_count() == (a == Rat(1) ? 0u : 1u));
        }
    }
}

TEST_CASE("check_max_fixed over balls") {
    const auto trans = GroupBall::build({PLMap::affine(Rat(1), Rat(1))}, {}, 5);
    CHECK(check_max_fixed(trans, 0).holds_on_ball);

    const auto aff = GroupBall::build({PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(1), Rat(1))},
                                      {}, 4);
    CHECK(check_max_fixed(aff, 1).holds_on_ball);
    const PropertyVerdict v0 = check_max_fixed(aff, 0);
    CHECK(!v0.holds_on_ball);
    REQUIRE(v0.violation);
    CHECK(v0.violation->fixed.point_count() == 1);

    const auto th = GroupBall::build({thompson_a(), thompson_b()}, {"A", "B"}, 1);
    const PropertyVerdict v = check_max_fixed(th, 2);
    CHECK(!v.holds_on_ball);
    REQUIRE(v.violation);
    CHECK(!v.violation->fixed.finite());  // an interval of fixed points
}

TEST_CASE("violations persist at larger radius with the same witness") {
    const auto th1 = GroupBall::build({thompson_a(), thompson_b()}, {"A", "B"}, 1);
    const auto th2 = GroupBall::build({thompson_a(), thompson_b()}, {"A", "B"}, 2);
    const PropertyVerdict v1 = check_max_fixed(th1, 2);
    const PropertyVerdict v2 = check_max_fixed(th2, 2);
    REQUIRE((v1.violation && v2.violation));
    CHECK(v1.violation->element == v2.violation->element);
}

TEST_CASE("global fixed points intersect the generators") {
    const auto single = GroupBall::build({g1()}, {}, 2);
    CHECK(global_fixed_points(single) == FixedSet::from_points({Rat(0), Rat(1)}));

    const auto aff = GroupBall::build({PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(1), Rat(1))},
                                      {}, 2);
    CHECK(global_fixed_points(aff).empty());

    const auto hom = GroupBall::build({PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(3), Rat(0))},
                                      {}, 2);
    CHECK(global_fixed_points(hom) == FixedSet::from_points({Rat(0)}));
}

TEST_CASE("orientation split") {
    const auto trans = GroupBall::build({PLMap::affine(Rat(1), Rat(1))}, {}, 3);
    CHECK(orientation_split(trans).reversing.empty());

    const auto refl = GroupBall::build({PLMap::affine(Rat(-1), Rat(0))}, {}, 2);
    const auto split = orientation_split(refl);
    REQUIRE(split.preserving.size() == 1);
    REQUIRE(split.reversing.size() == 1);
    CHECK(split.preserving[0].element.is_identity());

    // reversing elements are exactly the odd-reflection-count words
    const auto mixed =
        GroupBall::build({PLMap::affine(Rat(-1), Rat(0)), PLMap::affine(Rat(1), Rat(1))}, {}, 2);
    for (const auto& e : mixed.entries()) {
        int reflections = 0;
        for (const auto& l : e.word.letters())
            if (l.generator == 0) ++reflections;
        CHECK(e.element.orientation_preserving() == (reflections % 2 == 0));
    }
}

TEST_CASE("abelian checks") {
    CHECK(is_abelian_on_ball(GroupBall::build({PLMap::affine(Rat(1), Rat(1)),
                                               PLMap::affine(Rat(1), Rat(1, 2))},
                                              {}, 2))
              .holds);
    const auto aff = GroupBall::build({PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(1), Rat(1))},
                                      {}, 2);
    const CommutationVerdict cv = is_abelian_on_ball(aff);
    CHECK(!cv.holds);
    CHECK(*cv.lhs == PLMap::affine(Rat(2), Rat(2)));
    CHECK(*cv.rhs == PLMap::affine(Rat(2), Rat(1)));
    CHECK(is_abelian_on_ball(GroupBall::build({g1(), g1().pow(2)}, {}, 2)).holds);
}

TEST_CASE("abelian_global_fixed_check") {
    CHECK(abelian_global_fixed_check(GroupBall::build({g1()}, {}, 4)).holds);
    CHECK(abelian_global_fixed_check(GroupBall::build({PLMap::affine(Rat(1), Rat(1))}, {}, 4)).holds);

    // conjugate copies of g1 do not commute; the precondition must reject them
    const PLMap h = PLMap::affine(Rat(1), Rat(3));
    const PLMap conj = compose(compose(h, g1()), h.inverse());
    CHECK(!(compose(g1(), conj) == compose(conj, g1())));
    CHECK_THROWS_AS(abelian_global_fixed_check(GroupBall::build({g1(), conj}, {}, 2)),
                    PreconditionError);
}

TEST_CASE("orbit_hits_interval") {
    const auto small = GroupBall::build({PLMap::affine(Rat(1), Rat(1))}, {}, 5);
    CHECK(!orbit_hits_interval(small, Rat(10), Rat(0), Rat(1)));
    const auto big = GroupBall::build({PLMap::affine(Rat(1), Rat(1))}, {}, 12);
    // the integer orbit of 10 misses the open unit interval even at radius 12
    CHECK(!orbit_hits_interval(big, Rat(10), Rat(0), Rat(1)));
    CHECK(orbit_hits_interval(big, Rat(21, 2), Rat(0), Rat(1)));
    CHECK_THROWS_AS(orbit_hits_interval(small, Rat(0), Rat(1), Rat(0)), PreconditionError);
}

TEST_CASE("funnel: F(0), the interval, and the drive") {
    const Funnel f0 = Funnel::build({PLMap::affine(Rat(1), Rat(1))}, 0);
    CHECK(f0.f_zero() == Rat(1));

    const Funnel f = Funnel::build({PLMap::affine(Rat(2), Rat(0)), PLMap::affine(Rat(1), Rat(1))}, 1);
    CHECK(f.f_zero() == Rat(1));  // max(0, 0, 1, -1) at x = 0
    CHECK(f.interval() == std::pair<Rat, Rat>{Rat(-1), Rat(2)});

    for (const Rat& x : {Rat(-50), Rat(-99, 7), Rat(1, 3), Rat(17, 3), Rat(88)}) {
        CHECK(f.apply(x) > x);
        const auto drive = f.drive_to_core(x);
        CHECK(Rat(0) <= drive.core);
        CHECK(drive.core < f.f_zero());
        REQUIRE(!drive.chain.empty());
        for (std::size_t i = 1; i < drive.chain.size(); ++i) {
            CHECK(drive.chain[i - 1] < drive.chain[i]);
            CHECK(f.apply(drive.chain[i - 1]) == drive.chain[i]);
        }
    }
}

TEST_CASE("funnel rejects shared fixed points and starved input") {
    CHECK_THROWS_AS(Funnel::build({g1()}, 1), PreconditionError);  // needs two preserving generators
    CHECK_THROWS_AS(Funnel::build({g1(), g1().pow(2)}, 1), SharedFixedPoint);
    CHECK_THROWS_AS(Funnel::build({PLMap::affine(Rat(-1), Rat(0)), PLMap::affine(Rat(-1), Rat(1))}, 1),
                    PreconditionError);
}
