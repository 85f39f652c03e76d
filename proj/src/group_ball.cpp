#include "plh/group_ball.hpp"

#include <algorithm>
#include <cassert>

#include "plh/errors.hpp"

namespace plh {

namespace {

bool letter_less(const Letter& a, const Letter& b) {
    if (a.generator != b.generator) return a.generator < b.generator;
    return a.exponent > b.exponent;  // positive exponent sorts first
}

}  // namespace

bool Word::cancels(const Letter& l) const {
    return !letters_.empty() && letters_.back().generator == l.generator &&
           letters_.back().exponent == -l.exponent;
}

Word Word::appended(const Letter& l) const {
    Word w = *this;
    if (w.cancels(l)) {
        w.letters_.pop_back();
    } else {
        w.letters_.push_back(l);
    }
    return w;
}

Word Word::inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        w.letters_.push_back(Letter{it->generator, -it->exponent});
    return w;
}

std::string Word::str(const std::vector<std::string>& names) const {
    if (letters_.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += " ";
        const auto& l = letters_[i];
        out += l.generator < static_cast<int>(names.size()) ? names[l.generator]
                                                            : "g" + std::to_string(l.generator + 1);
        if (l.exponent < 0) out += "^-1";
    }
    return out;
}

bool word_less(const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return std::lexicographical_compare(a.letters().begin(), a.letters().end(),
                                        b.letters().begin(), b.letters().end(), letter_less);
}

GroupBall GroupBall::build(std::vector<PLMap> generators, std::vector<std::string> names,
                           int radius, std::size_t element_cap) {
    if (radius < 0) throw ValidationError("ball radius must be non-negative");
    if (!names.empty() && names.size() != generators.size())
        throw ValidationError("generator name count does not match generator count");
    if (names.empty()) {
        for (std::size_t i = 0; i < generators.size(); ++i) names.push_back("g" + std::to_string(i + 1));
    }

    GroupBall ball;
    ball.generators_ = std::move(generators);
    ball.names_ = std::move(names);
    ball.radius_ = radius;

    std::vector<std::pair<PLMap, PLMap>> letter_maps;  // (generator, inverse)
    letter_maps.reserve(ball.generators_.size());
    for (const auto& g : ball.generators_) letter_maps.emplace_back(g, g.inverse());

    ball.entries_.push_back(BallEntry{PLMap::identity(), Word()});
    ball.index_.emplace(PLMap::identity(), 0);

    std::vector<std::size_t> frontier{0};
    for (int layer = 1; layer <= radius && !frontier.empty(); ++layer) {
        std::vector<std::size_t> next;
        for (const std::size_t idx : frontier) {
            const PLMap base = ball.entries_[idx].element;
            const Word word = ball.entries_[idx].word;
            for (std::size_t gi = 0; gi < letter_maps.size(); ++gi) {
                for (const int exp : {1, -1}) {
                    const Letter letter{static_cast<int>(gi), exp};
                    if (word.cancels(letter)) continue;
                    PLMap elem = compose(base, exp > 0 ? letter_maps[gi].first : letter_maps[gi].second);
                    if (ball.index_.count(elem)) continue;
                    if (ball.entries_.size() >= element_cap)
                        throw ResourceLimitExceeded("ball element cap of " + std::to_string(element_cap) +
                                                    " exceeded at radius " + std::to_string(layer));
                    ball.index_.emplace(elem, ball.entries_.size());
                    next.push_back(ball.entries_.size());
                    ball.entries_.push_back(BallEntry{std::move(elem), word.appended(letter)});
                }
            }
        }
        frontier = std::move(next);
    }
    return ball;
}

const BallEntry* GroupBall::find(const PLMap& g) const {
    const auto it = index_.find(g);
    return it == index_.end() ? nullptr : &entries_[it->second];
}

PropertyVerdict check_max_fixed(const GroupBall& ball, int max_fixed) {
    if (max_fixed < 0) throw ValidationError("the fixed-point bound must be non-negative");
    for (const auto& entry : ball.entries()) {
        if (entry.element.is_identity()) continue;
        FixedSet fs = entry.element.fixed_set();
        if (!fs.finite() || fs.point_count() > static_cast<std::size_t>(max_fixed))
            return PropertyVerdict{false, ball.radius(),
                                   PropertyVerdict::Violation{entry.element, entry.word, std::move(fs)}};
    }
    return PropertyVerdict{true, ball.radius(), std::nullopt};
}

FixedSet global_fixed_points(const GroupBall& ball) {
    FixedSet acc = FixedSet::whole_line();
    for (const auto& g : ball.generators()) acc = intersect(acc, g.fixed_set());
    return acc;
}

OrientationSplit orientation_split(const GroupBall& ball) {
    OrientationSplit split;
    for (const auto& entry : ball.entries()) {
        (entry.element.orientation_preserving() ? split.preserving : split.reversing).push_back(entry);
    }
    return split;
}

CommutationVerdict is_abelian_on_ball(const GroupBall& ball) {
    const auto& gens = ball.generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            PLMap ab = compose(gens[i], gens[j]);
            PLMap ba = compose(gens[j], gens[i]);
            if (!(ab == ba))
                return CommutationVerdict{false, std::make_pair(i, j), std::move(ab), std::move(ba)};
        }
    }
    return CommutationVerdict{true, std::nullopt, std::nullopt, std::nullopt};
}

GlobalFixedCheck abelian_global_fixed_check(const GroupBall& ball) {
    const CommutationVerdict ab = is_abelian_on_ball(ball);
    if (!ab.holds)
        throw PreconditionError("abelian_global_fixed_check requires commuting generators");
    FixedSet global = global_fixed_points(ball);
    for (const auto& entry : ball.entries()) {
        if (entry.element.is_identity()) continue;
        const FixedSet fs = entry.element.fixed_set();
        for (const auto& comp : fs.components()) {
            if (auto p = uncovered_point(comp, global)) {
                return GlobalFixedCheck{false, std::move(global),
                                        GlobalFixedCheck::Violation{entry.element, entry.word, *p}};
            }
        }
    }
    return GlobalFixedCheck{true, std::move(global), std::nullopt};
}

bool orbit_hits_interval(const GroupBall& ball, const Rat& x, const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) throw PreconditionError("orbit_hits_interval needs lo < hi");
    for (const auto& entry : ball.entries()) {
        const Rat y = entry.element(x);
        if (lo < y && y < hi) return true;
    }
    return false;
}

Funnel Funnel::build(const std::vector<PLMap>& generators, int max_fixed) {
    if (max_fixed < 0) throw ValidationError("max_fixed must be non-negative");
    std::vector<PLMap> chosen;
    for (const auto& g : generators) {
        if (g.orientation_preserving() && !g.is_identity()) chosen.push_back(g);
        if (chosen.size() == static_cast<std::size_t>(max_fixed) + 1) break;
    }
    if (chosen.size() < static_cast<std::size_t>(max_fixed) + 1)
        throw PreconditionError("funnel needs at least max_fixed+1 orientation-preserving generators");

    FixedSet shared = FixedSet::whole_line();
    for (const auto& g : chosen) shared = intersect(shared, g.fixed_set());
    if (!shared.empty())
        throw SharedFixedPoint("chosen generators share fixed points " + shared.str());

    Funnel f;
    for (const auto& g : chosen) {
        f.family_.push_back(g);
        f.family_.push_back(g.inverse());
    }
    f.f_zero_ = f.apply(Rat(0));
    return f;
}

Rat Funnel::apply(const Rat& x) const {
    Rat best = family_.front()(x);
    for (std::size_t i = 1; i < family_.size(); ++i) {
        Rat v = family_[i](x);
        if (v > best) best = std::move(v);
    }
    return best;
}

Rat Funnel::apply_inverse(const Rat& x) const {
    Rat best = family_.front()(x);
    for (std::size_t i = 1; i < family_.size(); ++i) {
        Rat v = family_[i](x);
        if (v < best) best = std::move(v);
    }
    return best;
}

Funnel::Drive Funnel::drive_to_core(const Rat& x, std::size_t step_cap) const {
    std::vector<Rat> chain{x};
    Rat cur = x;
    if (cur < Rat(0)) {
        while (cur < Rat(0)) {
            Rat next = apply(cur);
            assert(next > cur);
            cur = std::move(next);
            chain.push_back(cur);
            if (chain.size() > step_cap) throw ResourceLimitExceeded("funnel iteration cap exceeded");
        }
    } else if (cur >= f_zero_) {
        while (cur >= f_zero_) {
            Rat prev = apply_inverse(cur);
            assert(prev < cur);
            cur = std::move(prev);
            chain.push_back(cur);
            if (chain.size() > step_cap) throw ResourceLimitExceeded("funnel iteration cap exceeded");
        }
        std::reverse(chain.begin(), chain.end());
    }
    assert(Rat(0) <= cur && cur < f_zero_);
    return Drive{std::move(cur), std::move(chain)};
}

}  // namespace plh
