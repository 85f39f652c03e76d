#include "plh/io.hpp"

#include <fstream>
#include <sstream>

#include "plh/errors.hpp"

namespace plh {

namespace {

std::string anchors_to_text(const std::vector<Anchor>& anchors) {
    std::string out;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        if (i) out += ";";
        out += "(" + anchors[i].x.str() + "," + anchors[i].y.str() + ")";
    }
    return out;
}

std::string pl_text(const detail::PLData& d) {
    return "pl left_slope=" + d.left.str() + " anchors=" + anchors_to_text(d.anchors) +
           " right_slope=" + d.right.str();
}

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size()) break;
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        tokens.push_back(Token{std::string(s.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return tokens;
}

Rat parse_rat_at(const std::string& text, int line, int column) {
    try {
        return Rat::parse(text);
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), line, column);
    }
}

// "key=value", returning value and checking the key
std::string expect_kv(const Token& token, const std::string& key, int line) {
    const std::string prefix = key + "=";
    if (token.text.rfind(prefix, 0) != 0)
        throw ParseError("expected '" + key + "=...', got '" + token.text + "'", line, token.column);
    return token.text.substr(prefix.size());
}

std::vector<Anchor> parse_anchor_list(const std::string& text, int line, int column) {
    std::vector<Anchor> anchors;
    if (text.empty()) return anchors;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != '(')
            throw ParseError("expected '(' in anchor list", line, column + static_cast<int>(pos));
        const std::size_t comma = text.find(',', pos);
        const std::size_t close = text.find(')', pos);
        if (comma == std::string::npos || close == std::string::npos || close < comma)
            throw ParseError("malformed anchor, expected (b,v)", line, column + static_cast<int>(pos));
        const std::string bx = text.substr(pos + 1, comma - pos - 1);
        const std::string vy = text.substr(comma + 1, close - comma - 1);
        anchors.push_back(Anchor{parse_rat_at(bx, line, column + static_cast<int>(pos) + 1),
                                 parse_rat_at(vy, line, column + static_cast<int>(comma) + 1)});
        pos = close + 1;
        if (pos < text.size()) {
            if (text[pos] != ';')
                throw ParseError("expected ';' between anchors", line, column + static_cast<int>(pos));
            ++pos;
        }
    }
    return anchors;
}

json rat_or_null(const std::optional<Rat>& r) { return r ? json(r->str()) : json(nullptr); }

json interval_json(const std::pair<Rat, Rat>& iv) { return json::array({iv.first.str(), iv.second.str()}); }

json data_json(const detail::PLData& d) {
    json anchors = json::array();
    for (const auto& a : d.anchors) anchors.push_back(json::array({a.x.str(), a.y.str()}));
    return json{{"left_slope", d.left.str()}, {"anchors", std::move(anchors)}, {"right_slope", d.right.str()}};
}

}  // namespace

std::string to_text(const PLMap& g) { return pl_text(g.data()); }

std::string to_text(const MonotonePL& h) { return pl_text(h.data()); }

PLMap map_from_text(std::string_view text, int line_no) {
    const std::vector<Token> tokens = tokenize(text);
    if (tokens.empty()) throw ParseError("empty map description", line_no, 1);
    if (tokens[0].text == "affine") {
        if (tokens.size() != 3) throw ParseError("affine form is 'affine a=<rat> b=<rat>'", line_no, 1);
        const Rat a = parse_rat_at(expect_kv(tokens[1], "a", line_no), line_no, tokens[1].column);
        const Rat b = parse_rat_at(expect_kv(tokens[2], "b", line_no), line_no, tokens[2].column);
        try {
            return PLMap::affine(a, b);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), line_no, tokens[1].column);
        }
    }
    if (tokens[0].text == "pl") {
        if (tokens.size() != 4)
            throw ParseError("pl form is 'pl left_slope=<rat> anchors=... right_slope=<rat>'", line_no, 1);
        const Rat left =
            parse_rat_at(expect_kv(tokens[1], "left_slope", line_no), line_no, tokens[1].column);
        std::vector<Anchor> anchors =
            parse_anchor_list(expect_kv(tokens[2], "anchors", line_no), line_no, tokens[2].column);
        const Rat right =
            parse_rat_at(expect_kv(tokens[3], "right_slope", line_no), line_no, tokens[3].column);
        try {
            return PLMap::from_anchors(std::move(anchors), left, right);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), line_no, tokens[2].column);
        }
    }
    throw ParseError("map must start with 'pl' or 'affine', got '" + tokens[0].text + "'", line_no,
                     tokens[0].column);
}

json to_json(const PLMap& g) { return data_json(g.data()); }

json to_json(const MonotonePL& h) { return data_json(h.data()); }

PLMap map_from_json(const json& j) {
    std::vector<Anchor> anchors;
    for (const auto& a : j.at("anchors"))
        anchors.push_back(Anchor{Rat::parse(a.at(0).get<std::string>()),
                                 Rat::parse(a.at(1).get<std::string>())});
    return PLMap::from_anchors(std::move(anchors), Rat::parse(j.at("left_slope").get<std::string>()),
                               Rat::parse(j.at("right_slope").get<std::string>()));
}

json to_json(const FixedSet& fs) {
    json comps = json::array();
    for (const auto& c : fs.components()) {
        if (c.is_point()) {
            comps.push_back(json{{"kind", "point"}, {"at", c.lo->str()}});
        } else {
            comps.push_back(json{{"kind", "interval"}, {"lo", rat_or_null(c.lo)}, {"hi", rat_or_null(c.hi)}});
        }
    }
    return json{{"components", std::move(comps)}, {"finite", fs.finite()}};
}

json to_json(const TypeSignature& t) {
    json signs = json::array();
    for (const Sign s : t.signs) signs.push_back(s == Sign::plus ? "+" : "-");
    return signs;
}

json to_json(const Word& w, const std::vector<std::string>& names) {
    return json(w.str(names));
}

json to_json(const PropertyVerdict& v, const std::vector<std::string>& names) {
    json j{{"status", v.holds_on_ball ? "holds_on_ball" : "violated"}, {"radius", v.radius}};
    if (v.violation) {
        j["witness"] = json{{"word", v.violation->word.str(names)},
                            {"element", to_json(v.violation->element)},
                            {"fixed_set", to_json(v.violation->fixed)}};
    }
    return j;
}

json to_json(const WitnessReport& r) {
    json elements = json::array();
    for (const auto& e : r.elements)
        elements.push_back(json{{"name", e.name}, {"definition", e.definition}, {"map", to_json(e.map)}});
    json intervals = json::array();
    for (const auto& iv : r.separating_intervals) intervals.push_back(interval_json(iv));
    json trace = json::array();
    for (const auto& c : r.trace)
        trace.push_back(json{{"check", c.what}, {"lhs", c.lhs.str()}, {"rel", c.rel}, {"rhs", c.rhs.str()}});
    json j{{"initial_case", to_string(r.initial_case)},
           {"executed_case", to_string(r.executed_case)},
           {"input_inverted", r.input_inverted},
           {"reductions", r.reductions},
           {"elements", std::move(elements)},
           {"witness_expression", r.witness_expression}};
    if (r.exponent_n) j["n"] = *r.exponent_n;
    if (r.exponent_m) j["m"] = *r.exponent_m;
    j["witness"] = to_json(r.witness);
    j["fixed_points"] = to_json(r.fixed_points);
    j["separating_intervals"] = std::move(intervals);
    j["trace"] = std::move(trace);
    return j;
}

json to_json(const TranslationChart& chart, const std::vector<std::string>& names) {
    json out = json::array();
    for (const auto& e : chart) {
        out.push_back(json{{"word", e.word.str(names)},
                           {"at_base", e.at_base.str()},
                           {"tau", json{{"lo", e.tau.lo.str()},
                                        {"hi", e.tau.hi.str()},
                                        {"iterations", e.tau.iterations}}}});
    }
    return out;
}

json to_json(const MinimalReport& r) {
    json j{{"kind", to_string(r.kind)},
           {"heuristic", r.heuristic},
           {"base", r.base.str()},
           {"window", json::array({r.window.first.str(), r.window.second.str()})},
           {"resolution", r.resolution.str()},
           {"max_gap", r.max_gap.str()},
           {"orbit_size", r.orbit_size}};
    if (r.kind == MinimalKind::finite_orbit) j["finite_set"] = to_json(r.finite_set);
    return j;
}

json to_json(const ClassificationReport& r, const std::vector<std::string>& names) {
    json j{{"verdict", to_string(r.verdict)},
           {"radius", r.radius},
           {"ball_size", r.ball_size},
           {"disclaimer", r.disclaimer}};
    if (r.global_fixed) j["global_fixed"] = to_json(*r.global_fixed);
    if (r.max_fixed_verdict) j["max_fixed"] = to_json(*r.max_fixed_verdict, names);
    if (r.witness) j["witness_report"] = to_json(*r.witness);
    if (r.certificate) {
        json pairs = json::array();
        for (const auto& [g, image] : r.certificate->pairs)
            pairs.push_back(json{{"generator", to_json(g)}, {"image", to_json(image)}});
        j["certificate"] = json{{"h", to_json(r.certificate->h)}, {"pairs", std::move(pairs)}};
    }
    if (r.minimal) j["minimal"] = to_json(*r.minimal);
    j["notes"] = r.notes;
    return j;
}

std::vector<PLMap> GroupFile::generators() const {
    std::vector<PLMap> out;
    out.reserve(maps.size());
    for (const auto& [name, map] : maps) out.push_back(map);
    return out;
}

std::vector<std::string> GroupFile::names() const {
    std::vector<std::string> out;
    out.reserve(maps.size());
    for (const auto& [name, map] : maps) out.push_back(name);
    return out;
}

const PLMap* GroupFile::find(const std::string& name) const {
    for (const auto& [n, map] : maps) {
        if (n == name) return &map;
    }
    return nullptr;
}

GroupFile parse_group_file(std::istream& in) {
    GroupFile file;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::vector<Token> tokens = tokenize(line);
        if (tokens.empty() || tokens[0].text[0] == '#') continue;

        if (tokens.size() >= 2 && tokens[1].text == "=") {
            const std::string& name = tokens[0].text;
            const std::size_t eq = line.find('=', tokens[1].column - 1);
            const std::string rest = line.substr(eq + 1);
            PLMap map = map_from_text(rest, line_no);
            if (name == "certificate") {
                if (file.certificate) throw ParseError("duplicate certificate line", line_no, 1);
                file.certificate = std::move(map);
            } else {
                if (file.find(name)) throw ParseError("duplicate map name '" + name + "'", line_no, 1);
                file.maps.emplace_back(name, std::move(map));
            }
            continue;
        }

        // header line: radius=<int> and/or N=<int>
        for (const auto& token : tokens) {
            if (token.text.rfind("radius=", 0) == 0) {
                try {
                    file.radius = std::stoi(token.text.substr(7));
                } catch (...) {
                    throw ParseError("malformed radius", line_no, token.column);
                }
            } else if (token.text.rfind("N=", 0) == 0) {
                try {
                    file.max_fixed = std::stoi(token.text.substr(2));
                } catch (...) {
                    throw ParseError("malformed N", line_no, token.column);
                }
            } else {
                throw ParseError("expected 'name = <map>' or header 'radius=<int> N=<int>', got '" +
                                     token.text + "'",
                                 line_no, token.column);
            }
        }
    }
    return file;
}

GroupFile parse_group_file_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    return parse_group_file(in);
}

std::string render_classify_line(const std::string& name, const PLMap& g) {
    std::string out = name.empty() ? "" : name + ": ";
    if (g.is_identity()) return out + "identity, Fix=R, type undefined (identity map)";
    out += g.orientation_preserving() ? "orientation-preserving" : "orientation-reversing";
    const FixedSet fs = g.fixed_set();
    out += ", Fix=" + fs.str();
    if (!g.orientation_preserving()) {
        out += ", type undefined (orientation-reversing)";
    } else if (!fs.finite()) {
        out += ", type undefined (fixed set has an interval component)";
    } else {
        out += ", type " + type_signature(g).str();
    }
    return out;
}

std::string render_check(const PropertyVerdict& v, const std::vector<std::string>& names) {
    std::ostringstream out;
    if (v.holds_on_ball) {
        out << "holds_on_ball (radius " << v.radius
            << "): no element violates the fixed-point bound; only a refutation would be conclusive";
    } else {
        out << "violated (radius " << v.radius << "): element " << v.violation->word.str(names)
            << " has fixed set " << v.violation->fixed.str() << "\n  element: "
            << to_text(v.violation->element);
    }
    return out.str();
}

std::string render_witness(const WitnessReport& r) {
    std::ostringstream out;
    out << "case " << to_string(r.initial_case);
    if (r.executed_case != r.initial_case) out << " (executed as " << to_string(r.executed_case) << ")";
    out << "\n";
    for (const auto& red : r.reductions) out << "  reduction: " << red << "\n";
    out << "  construction:\n";
    for (const auto& e : r.elements)
        out << "    " << e.name << " = " << e.definition << "\n      " << to_text(e.map) << "\n";
    out << "  witness: " << r.witness_expression;
    if (r.exponent_n) out << "  [n = " << *r.exponent_n << "]";
    if (r.exponent_m) out << "  [m = " << *r.exponent_m << "]";
    out << "\n    " << to_text(r.witness) << "\n";
    out << "  fixed points (recomputed exactly): " << r.fixed_points.str() << "\n";
    out << "  separating intervals:";
    for (const auto& [lo, hi] : r.separating_intervals) out << " (" << lo.str() << ", " << hi.str() << ")";
    out << "\n  trace (" << r.trace.size() << " exact checks):\n";
    for (const auto& c : r.trace)
        out << "    " << c.what << ":  " << c.lhs.str() << " " << c.rel << " " << c.rhs.str() << "\n";
    return out.str();
}

std::string render_chart(const TranslationChart& chart, const ChartMonotonicity& mono,
                         const std::vector<std::string>& names) {
    std::ostringstream out;
    out << "translation chart (" << chart.size() << " elements)\n";
    for (const auto& e : chart) {
        out << "  " << e.word.str(names) << ": w(x0)=" << e.at_base.str() << ", tau in ["
            << e.tau.lo.str() << ", " << e.tau.hi.str() << "]";
        if (e.tau.lo == e.tau.hi) out << " (exact)";
        out << "\n";
    }
    out << (mono.compatible ? "order compatible with the tau brackets"
                            : "ORDER VIOLATION between entries " +
                                  std::to_string(mono.violating_pair->first) + " and " +
                                  std::to_string(mono.violating_pair->second));
    return out.str();
}

std::string render_theorem_a(const ClassificationReport& r, const std::vector<std::string>& names) {
    std::ostringstream out;
    out << "verdict: " << to_string(r.verdict) << " (radius " << r.radius << ", ball size "
        << r.ball_size << ")\n";
    if (r.global_fixed) out << "  global fixed set: " << r.global_fixed->str() << "\n";
    if (r.max_fixed_verdict && r.max_fixed_verdict->violation) {
        out << "  " << render_check(*r.max_fixed_verdict, names) << "\n";
    }
    if (r.witness) {
        std::istringstream wit(render_witness(*r.witness));
        std::string line;
        while (std::getline(wit, line)) out << "  " << line << "\n";
    }
    if (r.certificate) {
        out << "  semi-conjugacy h: " << to_text(r.certificate->h) << "\n";
        for (const auto& [g, image] : r.certificate->pairs)
            out << "    maps  " << to_text(g) << "\n      to  " << to_text(image) << "\n";
    }
    if (r.minimal) {
        out << "  minimal-set heuristic: " << to_string(r.minimal->kind) << " (max gap "
            << r.minimal->max_gap.str() << " at resolution " << r.minimal->resolution.str() << ")\n";
    }
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
    out << "  " << r.disclaimer;
    return out.str();
}

}  // namespace plh
