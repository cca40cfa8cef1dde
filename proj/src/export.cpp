#include "pulsewalk/export.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace pulsewalk {
namespace {

std::ostringstream csv_stream() {
    std::ostringstream os;
    os << std::setprecision(17);
    return os;
}

struct Viewport {
    double min_x, min_y, scale, height;

    double x(double v) const { return 40.0 + (v - min_x) * scale; }
    double y(double v) const { return height - 40.0 - (v - min_y) * scale; }
};

Viewport fit(const std::vector<WalkSample>& samples, double size) {
    double lo_x = 0.0, hi_x = 0.0, lo_y = 0.0, hi_y = 0.0;
    for (const auto& s : samples) {
        lo_x = std::min(lo_x, s.p.x());
        hi_x = std::max(hi_x, s.p.x());
        lo_y = std::min(lo_y, s.p.y());
        hi_y = std::max(hi_y, s.p.y());
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
    const double scale = (size - 80.0) / span;
    return {lo_x, lo_y, scale, 80.0 + (hi_y - lo_y) * scale};
}

}  // namespace

std::string walk_csv(const Walk& w, std::size_t per_segment) {
    auto os = csv_stream();
    os << "t,px,py,pz,step_index\n";
    for (const auto& s : sample_walk(w, per_segment)) {
        os << s.t << ',' << s.p.x() << ',' << s.p.y() << ',' << s.p.z() << ',' << s.step + 1 << '\n';
    }
    return os.str();
}

std::string walk_svg(const Walk& w, const std::string& title, std::size_t per_segment) {
    const auto samples = sample_walk(w, per_segment);
    const double size = 480.0;
    const Viewport vp = fit(samples, size);
    const double width = size;

    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << vp.height
       << "\" viewBox=\"0 0 " << width << ' ' << vp.height << "\">\n";
    os << "<title>" << title << "</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << vp.x(0) - 6 << "\" y1=\"" << vp.y(0) << "\" x2=\"" << vp.x(0) + 6 << "\" y2=\"" << vp.y(0)
       << "\" stroke=\"#888\"/>\n";
    os << "<line x1=\"" << vp.x(0) << "\" y1=\"" << vp.y(0) - 6 << "\" x2=\"" << vp.x(0) << "\" y2=\"" << vp.y(0) + 6
       << "\" stroke=\"#888\"/>\n";

    std::size_t i = 1;
    for (std::size_t seg = 0; seg < w.curve.size(); ++seg) {
        const bool odd = w.curve[seg].step % 2 == 0;
        os << "<polyline class=\"" << (odd ? "odd" : "even") << "\" fill=\"none\" stroke=\""
           << (odd ? "#1f3a93" : "#9fb3e6") << "\" stroke-width=\"2.5\" points=\"";
        os << vp.x(samples[i - 1].p.x()) << ',' << vp.y(samples[i - 1].p.y());
        for (std::size_t k = 0; k < per_segment && i < samples.size(); ++k, ++i) {
            os << ' ' << vp.x(samples[i].p.x()) << ',' << vp.y(samples[i].p.y());
        }
        os << "\"/>\n";
    }

    if (w.kind == Channel::detuning) {
        Vec3 head = Vec3::Zero();
        for (std::size_t j = 0; j < w.steps.size(); ++j) {
            const Vec3 mid = head + 0.5 * w.steps[j];
            os << "<line class=\"chord\" x1=\"" << vp.x(head.x()) << "\" y1=\"" << vp.y(head.y()) << "\" x2=\""
               << vp.x(head.x() + w.steps[j].x()) << "\" y2=\"" << vp.y(head.y() + w.steps[j].y())
               << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
            os << "<text class=\"lune\" x=\"" << vp.x(mid.x()) << "\" y=\"" << vp.y(mid.y()) + 5
               << "\" font-size=\"16\" text-anchor=\"middle\">" << (j % 2 == 0 ? "+" : "&#8722;") << "</text>\n";
            head += w.steps[j];
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string trajectory_csv(std::span<const TrajectoryPoint> points) {
    auto os = csv_stream();
    os << "t,rx,ry,rz\n";
    for (const auto& p : points) os << p.t << ',' << p.r.x() << ',' << p.r.y() << ',' << p.r.z() << '\n';
    return os.str();
}

std::string slope_csv(const SlopeReport& report) {
    auto os = csv_stream();
    os << "error,deviation\n";
    for (std::size_t i = 0; i < report.error_values.size(); ++i) {
        os << report.error_values[i] << ',' << report.deviations[i] << '\n';
    }
    return os.str();
}

std::string scan_csv(std::span<const AlphaScanPoint> points) {
    auto os = csv_stream();
    os << "alpha,residual,area_z\n";
    for (const auto& p : points) os << p.alpha << ',' << p.residual << ',' << p.area_z << '\n';
    return os.str();
}

}  // namespace pulsewalk
