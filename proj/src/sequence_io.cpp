#include "pulsewalk/sequence_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace pulsewalk {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw Error(ErrorCode::parse_error, field + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + key, "missing");
    return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = member(obj, key, path);
    if (!v.is_number()) fail(path + key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path + key, "not finite");
    return x;
}

}  // namespace

Sequence parse_sequence(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("document", e.what());
    }
    if (!doc.is_object()) fail("document", "expected a JSON object");

    const json& name = member(doc, "name", "");
    if (!name.is_string() || name.get<std::string>().empty()) fail("name", "expected a non-empty string");

    NetEffect intended;
    if (const auto it = doc.find("intended_net_effect"); it != doc.end()) {
        const std::string path = "intended_net_effect.";
        if (!it->is_object()) fail("intended_net_effect", "expected an object");
        const json& axis = member(*it, "axis", path);
        if (!axis.is_array() || axis.size() != 3) fail(path + "axis", "expected three numbers");
        for (int k = 0; k < 3; ++k) {
            if (!axis[static_cast<std::size_t>(k)].is_number()) fail(path + "axis", "expected three numbers");
            intended.axis[k] = axis[static_cast<std::size_t>(k)].get<double>();
        }
        if (!(intended.axis.norm() > 0.0)) fail(path + "axis", "must be non-zero");
        intended.angle = number(*it, "angle_over_pi", path);
    }

    const json& steps_json = member(doc, "steps", "");
    if (!steps_json.is_array() || steps_json.empty()) fail("steps", "expected a non-empty array");
    std::vector<PulseStep> steps;
    for (std::size_t i = 0; i < steps_json.size(); ++i) {
        const std::string path = "steps[" + std::to_string(i) + "].";
        const json& s = steps_json[i];
        if (!s.is_object()) fail("steps[" + std::to_string(i) + "]", "expected an object");
        const double phase = number(s, "phase_over_pi", path);
        const double angle = number(s, "angle_over_pi", path);
        if (!(angle > 0.0 && angle <= 2.0)) fail(path + "angle_over_pi", "must lie in (0, 2]");
        steps.emplace_back(phase, angle);
    }
    return Sequence(name.get<std::string>(), std::move(steps), intended);
}

Sequence read_sequence(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::parse_error, path.string() + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sequence(buf.str());
}

std::string sequence_to_json(const Sequence& seq) {
    json doc;
    doc["name"] = seq.name();
    const NetEffect& net = seq.intended_net_effect();
    doc["intended_net_effect"] = {{"axis", {net.axis.x(), net.axis.y(), net.axis.z()}}, {"angle_over_pi", net.angle}};
    json steps = json::array();
    for (const auto& s : seq.steps()) steps.push_back({{"phase_over_pi", s.phase()}, {"angle_over_pi", s.angle()}});
    doc["steps"] = std::move(steps);
    return doc.dump(2) + "\n";
}

void write_sequence(const Sequence& seq, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::invalid_argument, path.string() + ": cannot open for writing");
    out << sequence_to_json(seq);
}

}  // namespace pulsewalk
