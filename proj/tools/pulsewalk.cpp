// pulsewalk: verify, design, simulate and plot composite pulse sequences.
//
// Exit codes: 0 success, 1 verification failed, 2 input error.
#include "pulsewalk/bloch_sim.hpp"
#include "pulsewalk/catalog.hpp"
#include "pulsewalk/export.hpp"
#include "pulsewalk/sequence_io.hpp"
#include "pulsewalk/walks.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace pulsewalk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

struct Options {
    std::string source;
    std::string channel = "amplitude";
    double epsilon = 0.0;
    double delta = 0.0;
    std::string r0 = "0,0,1";
    std::string range;
    std::size_t points = 0;
    std::uint64_t seed = kDefaultSeed;
    std::string format = "csv";
    std::string out = "-";
    std::string json_out;
    int require_order = 1;
    bool no_slope = false;
    std::size_t samples = 32;
    std::string theta = "pi/2";
    std::string alpha = "pi";
};

Sequence load_sequence(const std::string& source) {
    const fs::path path(source);
    if (fs::is_regular_file(path)) return read_sequence(path);
    if (path.has_extension() && path.extension() == ".json") {
        throw Error(ErrorCode::parse_error, "cannot open sequence file '" + source + "'");
    }
    return catalog(source);
}

std::vector<Channel> channels(const std::string& text) {
    if (text == "both") return {Channel::amplitude, Channel::detuning};
    return {parse_channel(text)};
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorCode::parse_error, "--range: expected lo:hi, got '" + text + "'");
    }
    return {parse_angle(text.substr(0, colon)), parse_angle(text.substr(colon + 1))};
}

Vec3 parse_vector(const std::string& text) {
    std::stringstream in(text);
    std::string item;
    std::vector<double> v;
    while (std::getline(in, item, ',')) {
        try {
            v.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw Error(ErrorCode::parse_error, "--r0: cannot parse '" + item + "'");
        }
    }
    if (v.size() != 3) throw Error(ErrorCode::parse_error, "--r0: expected three comma-separated components");
    const Vec3 r(v[0], v[1], v[2]);
    if (r.norm() == 0.0) throw Error(ErrorCode::parse_error, "--r0: vector must be non-zero");
    return r.normalized();
}

/// With several channels, "walk.svg" becomes "walk_amplitude.svg" and so on.
std::string output_for(const std::string& out, Channel ch, bool several) {
    if (!several || out == "-") return out;
    const fs::path p(out);
    return (p.parent_path() / (p.stem().string() + "_" + to_string(ch) + p.extension().string())).string();
}

void write_text(const std::string& out, const std::string& text) {
    if (out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error(ErrorCode::invalid_argument, "cannot write '" + out + "'");
    f << text;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

std::string vec_text(const Vec3& v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", v.x(), v.y(), v.z());
    return buf;
}

int achieved_order(const VerifyReport& r) { return r.second_order ? 2 : (r.first_order ? 1 : 0); }

int cmd_check(const Options& o) {
    const Sequence seq = load_sequence(o.source);
    VerifyOptions vo;
    vo.with_slope = !o.no_slope;
    vo.seed = o.seed;
    // Human text moves to stderr when the JSON report takes stdout.
    FILE* human = o.json_out == "-" ? stderr : stdout;
    json reports = json::array();
    bool pass = true;
    std::fprintf(human, "sequence %s (%zu steps)\n", seq.name().c_str(), seq.size());
    for (Channel ch : channels(o.channel)) {
        const VerifyReport r = verify(seq, ch, vo);
        const bool ok = achieved_order(r) >= o.require_order;
        pass = pass && ok;
        std::fprintf(human, "\n[%s] method %s\n", to_string(ch), r.method.c_str());
        std::fprintf(human, "  closure residual  %.3e\n", r.closure_residual);
        std::fprintf(human, "  first order       %s\n", r.first_order ? "PASS" : "FAIL");
        if (r.first_order) std::fprintf(human, "  vector area       %s\n", vec_text(r.vector_area).c_str());
        std::fprintf(human, "  second order      %s\n", r.second_order ? "PASS" : "FAIL");
        std::fprintf(human, "  certified order   %d\n", r.certified_order);
        for (const Vec3& a : r.preserved_axes) std::fprintf(human, "  preserved axis    %s\n", vec_text(a).c_str());
        if (r.slope) std::fprintf(human, "  scaling slope     %.4f\n", *r.slope);
        std::fprintf(human, "  required order %d: %s\n", o.require_order, ok ? "PASS" : "FAIL");

        json axes = json::array();
        for (const Vec3& a : r.preserved_axes) axes.push_back(vec_json(a));
        reports.push_back({{"channel", to_string(ch)},
                           {"method", r.method},
                           {"closure_residual", r.closure_residual},
                           {"vector_area", r.first_order ? vec_json(r.vector_area) : json(nullptr)},
                           {"first_order", r.first_order},
                           {"second_order", r.second_order},
                           {"certified_order", r.certified_order},
                           {"preserved_axes", axes},
                           {"slope", r.slope ? json(*r.slope) : json(nullptr)},
                           {"pass", ok}});
    }
    if (!o.json_out.empty()) {
        const json doc{{"sequence", seq.name()},
                       {"steps", seq.size()},
                       {"required_order", o.require_order},
                       {"reports", reports},
                       {"pass", pass}};
        write_text(o.json_out, doc.dump(2) + "\n");
    }
    return pass ? kExitOk : kExitFailed;
}

int cmd_slope(const Options& o) {
    const Sequence seq = load_sequence(o.source);
    SlopeRange range;
    if (!o.range.empty()) std::tie(range.lo, range.hi) = parse_range(o.range);
    if (o.points > 0) range.points = o.points;
    if (!(range.lo > 0.0 && range.hi > range.lo) || range.points < 2) {
        throw Error(ErrorCode::out_of_range, "--range: need 0 < lo < hi and --points >= 2");
    }
    const auto states = default_initial_states(o.seed);
    const auto chs = channels(o.channel);
    json reports = json::array();
    for (Channel ch : chs) {
        const SlopeReport r = scaling_slope(seq, ch, states, range);
        write_text(output_for(o.out, ch, chs.size() > 1), slope_csv(r));
        if (r.slope) {
            std::fprintf(stderr, "%s %s: slope %.4f (r^2 %.6f)\n", seq.name().c_str(), to_string(ch), *r.slope,
                         r.r_squared);
        } else {
            std::fprintf(stderr, "%s %s: deviation below numerical noise, no slope\n", seq.name().c_str(),
                         to_string(ch));
        }
        reports.push_back({{"channel", to_string(ch)},
                           {"error", r.error_values},
                           {"deviation", r.deviations},
                           {"slope", r.slope ? json(*r.slope) : json(nullptr)},
                           {"intercept", r.intercept},
                           {"r_squared", r.r_squared}});
    }
    if (!o.json_out.empty()) {
        write_text(o.json_out, json{{"sequence", seq.name()}, {"seed", o.seed}, {"reports", reports}}.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_walk(const Options& o) {
    const Sequence seq = load_sequence(o.source);
    if (o.format != "csv" && o.format != "svg") {
        throw Error(ErrorCode::parse_error, "--format: expected csv or svg, got '" + o.format + "'");
    }
    const auto chs = channels(o.channel);
    for (Channel ch : chs) {
        const Walk w = walk_for(seq, ch);
        const std::string text =
            o.format == "svg" ? walk_svg(w, seq.name() + " / " + to_string(ch)) : walk_csv(w);
        write_text(output_for(o.out, ch, chs.size() > 1), text);
        std::fprintf(stderr, "%s %s walk: %zu steps, %s (residual %.3e)\n", seq.name().c_str(), to_string(ch),
                     w.steps.size(), w.closed() ? "closed" : "open", w.closure_residual.norm());
    }
    return kExitOk;
}

int cmd_scan_alpha(const Options& o) {
    double lo = 0.0;
    double hi = kPi;
    if (!o.range.empty()) std::tie(lo, hi) = parse_range(o.range);
    const std::size_t points = o.points > 0 ? o.points : 181;
    if (points < 2 || !(hi > lo)) throw Error(ErrorCode::out_of_range, "--range: need lo < hi and --points >= 2");
    const auto chs = channels(o.channel);
    for (Channel ch : chs) {
        write_text(output_for(o.out, ch, chs.size() > 1), scan_csv(scan_alpha(ch, lo, hi, points)));
    }
    return kExitOk;
}

int cmd_simulate(const Options& o) {
    const Sequence seq = load_sequence(o.source);
    const ErrorModel err(o.epsilon, o.delta);
    const Vec3 r0 = parse_vector(o.r0);
    const SimResult r = evolve(seq, err, r0, o.samples);
    write_text(o.out, trajectory_csv(r.trajectory));
    std::fprintf(stderr, "%s: final %s, ideal %s, deviation %.6e\n", seq.name().c_str(), vec_text(r.final_lab).c_str(),
                 vec_text(r.ideal).c_str(), r.deviation);
    if (!o.json_out.empty()) {
        const json doc{{"sequence", seq.name()},  {"epsilon", o.epsilon},         {"delta", o.delta},
                       {"r0", vec_json(r0)},      {"final", vec_json(r.final_lab)}, {"ideal", vec_json(r.ideal)},
                       {"deviation", r.deviation}};
        write_text(o.json_out, doc.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_design(const Options& o, const std::string& kind) {
    Sequence seq = [&] {
        if (kind == "magic") {
            const Channel ch = parse_channel(o.channel);
            const double alpha = solve_magic_angle(ch);
            std::fprintf(stderr, "magic %s angle alpha = %.10f rad\n", to_string(ch), alpha);
            return catalog(std::string("magic_") + to_string(ch));
        }
        const double theta = parse_angle(o.theta);
        const double alpha = parse_angle(o.alpha);
        const ThetaFamilySpec spec = theta_family_spec(theta, alpha);
        std::fprintf(stderr, "theta family: gamma = %.10f rad\n", spec.gamma * kPi);
        return theta_family(theta, alpha);
    }();
    write_text(o.out, sequence_to_json(seq) + "\n");
    return kExitOk;
}

void add_source(CLI::App* cmd, Options& o) {
    cmd->add_option("sequence", o.source, "Catalog name (e.g. knill, \"knill_family(pi/3)\") or sequence file")
        ->required();
}

void add_channel(CLI::App* cmd, Options& o, bool allow_both = true) {
    std::vector<std::string> choices{"amplitude", "detuning"};
    if (allow_both) choices.push_back("both");
    cmd->add_option("--channel", o.channel, "Error channel")->check(CLI::IsMember(choices))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric analysis of composite pulse sequences"};
    app.require_subcommand(1);
    Options o;
    std::string design_kind;

    auto* check = app.add_subcommand("check", "Verify first- and second-order compensation");
    add_source(check, o);
    add_channel(check, o);
    check->add_option("--require-order", o.require_order, "Order needed for exit code 0")
        ->check(CLI::Range(0, 2))
        ->capture_default_str();
    check->add_flag("--no-slope", o.no_slope, "Skip the numerical scaling slope");
    check->add_option("--seed", o.seed, "Seed for the random initial states")->capture_default_str();
    check->add_option("--json", o.json_out, "Write a JSON report ('-' for stdout)");

    auto* slope = app.add_subcommand("slope", "Worst-case deviation against error magnitude (CSV)");
    add_source(slope, o);
    add_channel(slope, o);
    slope->add_option("--range", o.range, "Error magnitudes lo:hi (default 1e-4:1e-2)");
    slope->add_option("--points", o.points, "Number of log-spaced magnitudes (default 7)");
    slope->add_option("--seed", o.seed, "Seed for the random initial states")->capture_default_str();
    slope->add_option("--out", o.out, "Output CSV ('-' for stdout)")->capture_default_str();
    slope->add_option("--json", o.json_out, "Write a JSON report ('-' for stdout)");

    auto* walk = app.add_subcommand("walk", "Export the error walk as CSV or SVG");
    add_source(walk, o);
    add_channel(walk, o);
    walk->add_option("--format", o.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}))->capture_default_str();
    walk->add_option("--out", o.out, "Output file ('-' for stdout)")->capture_default_str();

    auto* scan = app.add_subcommand("scan-alpha", "Closure residual and area across the Knill family (CSV)");
    add_channel(scan, o);
    scan->add_option("--range", o.range, "Alpha range lo:hi in radians (default 0:pi)");
    scan->add_option("--points", o.points, "Number of samples (default 181)");
    scan->add_option("--out", o.out, "Output CSV ('-' for stdout)")->capture_default_str();

    auto* sim = app.add_subcommand("simulate", "Exact Bloch-vector trajectory under a static error (CSV)");
    add_source(sim, o);
    sim->add_option("--epsilon", o.epsilon, "Fractional amplitude error")->capture_default_str();
    sim->add_option("--delta", o.delta, "Detuning in units of the Rabi frequency")->capture_default_str();
    sim->add_option("--r0", o.r0, "Initial Bloch vector x,y,z")->capture_default_str();
    sim->add_option("--samples", o.samples, "Trajectory points per step")->capture_default_str();
    sim->add_option("--out", o.out, "Output CSV ('-' for stdout)")->capture_default_str();
    sim->add_option("--json", o.json_out, "Write a JSON summary ('-' for stdout)");

    auto* design = app.add_subcommand("design", "Emit a designed sequence as a JSON sequence file");
    design->add_option("kind", design_kind, "magic or theta-family")
        ->required()
        ->check(CLI::IsMember({"magic", "theta-family"}));
    add_channel(design, o, false);
    design->add_option("--theta", o.theta, "Target rotation angle (theta-family)")->capture_default_str();
    design->add_option("--alpha", o.alpha, "Family parameter (theta-family)")->capture_default_str();
    design->add_option("--out", o.out, "Output file ('-' for stdout)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*check) return cmd_check(o);
        if (*slope) return cmd_slope(o);
        if (*walk) return cmd_walk(o);
        if (*scan) return cmd_scan_alpha(o);
        if (*sim) return cmd_simulate(o);
        if (*design) return cmd_design(o, design_kind);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
    return kExitInput;
}
