#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plh/group_ball.hpp"
#include "plh/pl_map.hpp"
#include "plh/semiconj.hpp"
#include "plh/witness.hpp"

namespace plh {

using json = nlohmann::ordered_json;

/// Canonical one-line rendering:
///   pl left_slope=<rat> anchors=(b,v);(b,v) right_slope=<rat>
/// Identity serializes as "pl left_slope=1 anchors= right_slope=1".
std::string to_text(const PLMap& g);
std::string to_text(const MonotonePL& h);

/// Parses the "pl ..." form or the shorthand "affine a=<rat> b=<rat>".
/// Throws ParseError with line/column on malformed input.
PLMap map_from_text(std::string_view text, int line_no = 1);

json to_json(const PLMap& g);
json to_json(const MonotonePL& h);
PLMap map_from_json(const json& j);

json to_json(const FixedSet& fs);
json to_json(const TypeSignature& t);
json to_json(const Word& w, const std::vector<std::string>& names);
json to_json(const PropertyVerdict& v, const std::vector<std::string>& names);
json to_json(const WitnessReport& r);
json to_json(const TranslationChart& chart, const std::vector<std::string>& names);
json to_json(const MinimalReport& r);
json to_json(const ClassificationReport& r, const std::vector<std::string>& names);

/// Group description file: an optional "radius=<int> N=<int>" header line,
/// then one named map per line ("name = pl ..." or "name = affine ...").
/// The name "certificate" is reserved for the affine-model conjugator.
struct GroupFile {
    std::optional<int> radius;
    std::optional<int> max_fixed;
    std::vector<std::pair<std::string, PLMap>> maps;
    std::optional<PLMap> certificate;

    std::vector<PLMap> generators() const;
    std::vector<std::string> names() const;
    const PLMap* find(const std::string& name) const;
};

GroupFile parse_group_file(std::istream& in);
GroupFile parse_group_file_path(const std::string& path);

// plain-text report rendering used by the CLI
std::string render_classify_line(const std::string& name, const PLMap& g);
std::string render_check(const PropertyVerdict& v, const std::vector<std::string>& names);
std::string render_witness(const WitnessReport& r);
std::string render_chart(const TranslationChart& chart, const ChartMonotonicity& mono,
                         const std::vector<std::string>& names);
std::string render_theorem_a(const ClassificationReport& r, const std::vector<std::string>& names);

}  // namespace plh
