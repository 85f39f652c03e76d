// Command-line front end: classification of PL maps, fixed-point bound checks
// over Cayley balls, witness construction, translation-number charts, and the
// end-to-end dichotomy pipeline.
//
// Exit codes (stable, scriptable):
//   0  property holds / report produced / non-violation verdict
//   1  violation certified (or, for transnum, the ball does not act freely)
//   2  input or configuration error
//   3  resource cap exhausted / inconclusive

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plh/errors.hpp"
#include "plh/io.hpp"

namespace {

using namespace plh;

constexpr int kExitHolds = 0;
constexpr int kExitViolated = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResource = 3;

struct CommonArgs {
    std::string path;
    std::string format = "text";
    int radius = -1;  // -1: take from file, else default
    int max_fixed = -1;
    std::size_t cap_elements = GroupBall::kDefaultElementCap;
    long cap_exponent = 10000;
    long iterations = 200;
    std::string window = "-10,10";
    std::string resolution = "1/100";
    std::string base = "0";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_radius = true) {
    cmd->add_option("file", args.path, "input file")->required();
    cmd->add_option("--format", args.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    if (with_radius) cmd->add_option("--radius", args.radius, "ball radius (overrides the file header)");
}

int effective_radius(const CommonArgs& args, const GroupFile& file, int fallback) {
    if (args.radius >= 0) return args.radius;
    if (file.radius) return *file.radius;
    return fallback;
}

int effective_max_fixed(const CommonArgs& args, const GroupFile& file, int fallback) {
    if (args.max_fixed >= 0) return args.max_fixed;
    if (file.max_fixed) return *file.max_fixed;
    return fallback;
}

std::pair<Rat, Rat> parse_window(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ValidationError("window must be 'lo,hi'");
    Rat lo = Rat::parse(text.substr(0, comma));
    Rat hi = Rat::parse(text.substr(comma + 1));
    if (!(lo < hi)) throw ValidationError("window needs lo < hi");
    return {std::move(lo), std::move(hi)};
}

void emit(const std::string& text) { std::cout << text << "\n"; }

int cmd_classify(const CommonArgs& args) {
    std::ifstream in(args.path);
    if (!in) {
        std::cerr << "cannot open file: " << args.path << "\n";
        return kExitInputError;
    }
    std::string line;
    int line_no = 0;
    int auto_id = 0;
    std::vector<std::pair<std::string, PLMap>> maps;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        const auto first = trimmed.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        trimmed = trimmed.substr(first);
        if (trimmed[0] == '#') continue;
        if (trimmed.rfind("radius=", 0) == 0 || trimmed.rfind("N=", 0) == 0) continue;
        // "name = <map>" or a bare map line
        const auto eq = trimmed.find(" = ");
        if (eq != std::string::npos && trimmed.find('=') == trimmed.find(" = ") + 1) {
            maps.emplace_back(trimmed.substr(0, eq), map_from_text(trimmed.substr(eq + 3), line_no));
        } else {
            maps.emplace_back("map" + std::to_string(++auto_id), map_from_text(trimmed, line_no));
        }
    }
    if (args.format == "json") {
        json out = json::array();
        for (const auto& [name, g] : maps) {
            json entry{{"name", name},
                       {"map", to_json(g)},
                       {"orientation", g.is_identity()        ? "identity"
                                       : g.orientation_preserving() ? "preserving"
                                                                    : "reversing"},
                       {"fixed_set", to_json(g.fixed_set())}};
            if (!g.is_identity() && g.orientation_preserving() && g.fixed_set().finite())
                entry["type"] = to_json(type_signature(g));
            out.push_back(std::move(entry));
        }
        emit(out.dump(2));
    } else {
        for (const auto& [name, g] : maps) emit(render_classify_line(name, g));
    }
    return kExitHolds;
}

int cmd_check(const CommonArgs& args) {
    const GroupFile file = parse_group_file_path(args.path);
    const int radius = effective_radius(args, file, 4);
    const int max_fixed = effective_max_fixed(args, file, 2);
    const GroupBall ball = GroupBall::build(file.generators(), file.names(), radius, args.cap_elements);
    const PropertyVerdict verdict = check_max_fixed(ball, max_fixed);
    if (args.format == "json") {
        json j = to_json(verdict, ball.generator_names());
        j["max_fixed"] = max_fixed;
        emit(j.dump(2));
    } else {
        emit("check_max_fixed N=" + std::to_string(max_fixed) + ": " +
             render_check(verdict, ball.generator_names()));
    }
    return verdict.holds_on_ball ? kExitHolds : kExitViolated;
}

int cmd_witness(const CommonArgs& args) {
    const GroupFile file = parse_group_file_path(args.path);
    const PLMap* g = file.find("g");
    const PLMap* f = file.find("f");
    if (!g || !f) {
        std::cerr << "witness request must name maps 'g' and 'f'\n";
        return kExitInputError;
    }
    const int radius = effective_radius(args, file, 2);
    const GroupBall context =
        GroupBall::build(file.generators(), file.names(), radius, args.cap_elements);
    WitnessOptions opts;
    opts.exponent_cap = args.cap_exponent;
    const WitnessReport report = witness_pipeline(*g, *f, &context, opts);
    if (args.format == "json") {
        emit(to_json(report).dump(2));
    } else {
        emit(render_witness(report));
    }
    return kExitHolds;
}

int cmd_transnum(const CommonArgs& args) {
    const GroupFile file = parse_group_file_path(args.path);
    const int radius = effective_radius(args, file, 3);
    const GroupBall ball = GroupBall::build(file.generators(), file.names(), radius, args.cap_elements);
    const Rat x0 = Rat::parse(args.base);

    // reference: the first fixed-point-free generator, inverted if it moves x0 down
    std::optional<PLMap> g0;
    for (const auto& g : ball.generators()) {
        if (g.is_identity() || !g.fixed_set().empty()) continue;
        if (g(x0) > x0) {
            g0 = g;
        } else {
            g0 = g.inverse();
        }
        break;
    }
    if (!g0) {
        std::cerr << "no fixed-point-free generator to serve as the reference grid\n";
        return kExitInputError;
    }
    if (!ball.contains(*g0)) {
        std::cerr << "reference element not in the ball (radius too small)\n";
        return kExitInputError;
    }
    const TranslationChart chart = translation_chart(ball, *g0, x0, args.iterations);
    const ChartMonotonicity mono = chart_monotonicity(chart);
    if (args.format == "json") {
        json j{{"reference", to_json(*g0)},
               {"base_point", x0.str()},
               {"iterations", args.iterations},
               {"chart", to_json(chart, ball.generator_names())},
               {"order_compatible", mono.compatible}};
        emit(j.dump(2));
    } else {
        emit(render_chart(chart, mono, ball.generator_names()));
    }
    return kExitHolds;
}

int cmd_theorem_a(const CommonArgs& args) {
    const GroupFile file = parse_group_file_path(args.path);
    PipelineOptions opts;
    opts.radius = effective_radius(args, file, 4);
    opts.max_fixed = effective_max_fixed(args, file, 2);
    opts.element_cap = args.cap_elements;
    opts.exponent_cap = args.cap_exponent;
    opts.iterations = args.iterations;
    opts.window = parse_window(args.window);
    opts.resolution = Rat::parse(args.resolution);
    opts.certificate = file.certificate;

    const ClassificationReport report = theorem_a_report(file.generators(), file.names(), opts);
    if (args.format == "json") {
        emit(to_json(report, file.names()).dump(2));
    } else {
        emit(render_theorem_a(report, file.names()));
    }
    switch (report.verdict) {
        case Verdict::violation: return kExitViolated;
        case Verdict::inconclusive: return kExitResource;
        default: return kExitHolds;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact piecewise-linear homeomorphisms of the line: fixed-point classification, "
                 "Cayley-ball checks, witness construction, and semi-conjugacy reports"};
    app.require_subcommand(1);

    CommonArgs classify_args, check_args, witness_args, transnum_args, theorem_args;

    CLI::App* classify = app.add_subcommand("classify", "orientation, fixed set and type per map");
    add_common(classify, classify_args, false);

    CLI::App* check = app.add_subcommand("check", "scan a ball for the at-most-N fixed point bound");
    add_common(check, check_args);
    check->add_option("--max-fixed", check_args.max_fixed, "N, the fixed-point bound (overrides header)");
    check->add_option("--cap-elements", check_args.cap_elements, "ball element cap");

    CLI::App* witness = app.add_subcommand(
        "witness", "construct an element with >= 3 fixed points from maps 'g' and 'f'");
    add_common(witness, witness_args);
    witness->add_option("--cap-exponent", witness_args.cap_exponent, "minimal-exponent search cap");
    witness->add_option("--cap-elements", witness_args.cap_elements, "context ball element cap");

    CLI::App* transnum = app.add_subcommand("transnum", "translation-number chart over a free ball");
    add_common(transnum, transnum_args);
    transnum->add_option("--iterations", transnum_args.iterations, "orbit length for the tau brackets");
    transnum->add_option("--base", transnum_args.base, "base point x0 (rational)");
    transnum->add_option("--cap-elements", transnum_args.cap_elements, "ball element cap");

    CLI::App* theorem = app.add_subcommand("theorem-a", "run the full classification pipeline");
    add_common(theorem, theorem_args);
    theorem->add_option("--max-fixed", theorem_args.max_fixed, "N, the fixed-point bound");
    theorem->add_option("--cap-elements", theorem_args.cap_elements, "ball element cap");
    theorem->add_option("--cap-exponent", theorem_args.cap_exponent, "minimal-exponent search cap");
    theorem->add_option("--iterations", theorem_args.iterations, "tau iterations");
    theorem->add_option("--window", theorem_args.window, "sampling window 'lo,hi'");
    theorem->add_option("--resolution", theorem_args.resolution, "density resolution (rational)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return cmd_classify(classify_args);
        if (check->parsed()) return cmd_check(check_args);
        if (witness->parsed()) return cmd_witness(witness_args);
        if (transnum->parsed()) return cmd_transnum(transnum_args);
        if (theorem->parsed()) return cmd_theorem_a(theorem_args);
    } catch (const NotFree& e) {
        std::cerr << e.what() << "\n";
        return kExitViolated;
    } catch (const ResourceLimitExceeded& e) {
        std::cerr << e.what() << "\n";
        return kExitResource;
    } catch (const ExponentCapExceeded& e) {
        std::cerr << e.what() << "\n";
        return kExitResource;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
