#include "ringdeco/cli.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace ringdeco::cli {

namespace {

constexpr double plot_w = 640;
constexpr double plot_h = 400;
constexpr double margin_l = 70;
constexpr double margin_r = 20;
constexpr double margin_t = 20;
constexpr double margin_b = 50;

std::string svg_open(double width, double height)
{
    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
        width, height);
}

// Blue (negative) through white to red (positive).
std::string diverging(double v)
{
    v = std::clamp(v, -1.0, 1.0);
    int r = 255, g = 255, b = 255;
    if (v < 0) {
        r = g = static_cast<int>(std::lround(255 * (1 + v)));
    } else {
        g = b = static_cast<int>(std::lround(255 * (1 - v)));
    }
    return fmt::format("#{:02x}{:02x}{:02x}", r, g, b);
}

}  // namespace

void write_curve_csv(std::ostream& os, const DecoherenceCurve& curve, double omega, const KeyValues& source)
{
    os << provenance_header(source, to_string(curve.method));
    for (const auto& w : curve.warnings)
        os << "# warning: " << w << '\n';
    os << "t_seconds,omega_t,rho12_abs,method,underflow\n";
    const auto method = to_string(curve.method);
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        fmt::print(os, "{},{},{},{},{}\n", format_number(curve.times[i]), format_number(omega * curve.times[i]),
                   format_number(curve.values[i]), method, curve.underflow[i] ? 1 : 0);
    }
}

void write_curve_svg(std::ostream& os, const DecoherenceCurve& curve, double omega, double plateau_value)
{
    const double width = plot_w + margin_l + margin_r;
    const double height = plot_h + margin_t + margin_b;
    const double x_max = curve.times.empty() ? 1.0 : std::max(omega * curve.times.back(), 1e-300);
    auto px = [&](double wt) { return margin_l + plot_w * wt / x_max; };
    auto py = [&](double v) { return margin_t + plot_h * (1.0 - v / 0.5); };

    os << svg_open(width, height);
    fmt::print(os, "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
               margin_l, margin_t, plot_w, plot_h);
    for (int i = 0; i <= 5; ++i) {
        const double v = 0.1 * i;
        fmt::print(os, "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.1f}</text>\n", margin_l - 6, py(v) + 4, v);
        const double wt = x_max * i / 5.0;
        fmt::print(os, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", px(wt),
                   margin_t + plot_h + 18, wt);
    }
    fmt::print(os, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">omega t</text>\n", margin_l + plot_w / 2,
               height - 8);
    fmt::print(os, "<text x=\"16\" y=\"{}\" transform=\"rotate(-90 16 {})\" text-anchor=\"middle\">|rho_12|</text>\n",
               margin_t + plot_h / 2, margin_t + plot_h / 2);
    if (std::isfinite(plateau_value)) {
        fmt::print(os,
                   "<line x1=\"{}\" y1=\"{:.3f}\" x2=\"{}\" y2=\"{:.3f}\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n",
                   margin_l, py(plateau_value), margin_l + plot_w, py(plateau_value));
    }
    if (!curve.times.empty()) {
        os << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < curve.times.size(); ++i)
            fmt::print(os, "{}{:.3f},{:.3f}", i ? " " : "", px(omega * curve.times[i]), py(curve.values[i]));
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

void write_wigner_csv(std::ostream& os, const WignerField& field, const KeyValues& source)
{
    os << provenance_header(source, "wigner");
    fmt::print(os, "# t_seconds: {}\n", format_number(field.time));
    fmt::print(os, "# boundary-mass: {}\n", format_number(field.boundary));
    if (field.tails_grow)
        os << "# warning: tails grow with |p|, |q|; box is the tightest grid tried\n";
    os << "p,q,w_alpha,w_beta,w_interference,w_total\n";
    for (std::size_t ip = 0; ip < field.p_grid.size(); ++ip) {
        for (std::size_t iq = 0; iq < field.q_grid.size(); ++iq) {
            const auto i = field.index(ip, iq);
            fmt::print(os, "{},{},{},{},{},{}\n", format_number(field.p_grid[ip]), format_number(field.q_grid[iq]),
                       format_number(field.w_alpha[i]), format_number(field.w_beta[i]),
                       format_number(field.w_interference[i]), format_number(field.w_total[i]));
        }
    }
}

void write_wigner_svg(std::ostream& os, const WignerField& field, double n_particles, double omega_t)
{
    const std::size_t np = field.p_grid.size();
    const std::size_t nq = field.q_grid.size();
    constexpr std::size_t target = 144;
    const std::size_t sp = std::max<std::size_t>(1, np / target);
    const std::size_t sq = std::max<std::size_t>(1, nq / target);
    const std::size_t cp = np / sp;
    const std::size_t cq = nq / sq;

    double scale = 0;
    for (double v : field.w_total)
        scale = std::max(scale, std::abs(v));
    if (scale == 0)
        scale = 1;

    const double side = 480;
    const double width = side + margin_l + margin_r;
    const double height = side + margin_t + margin_b;
    const double cw = side / static_cast<double>(cp);
    const double ch = side / static_cast<double>(cq);

    os << svg_open(width, height);
    fmt::print(os, "<title>Wigner function at omega t = {}</title>\n", omega_t);
    // p runs along x, q along y (upwards).
    for (std::size_t bp = 0; bp < cp; ++bp) {
        for (std::size_t bq = 0; bq < cq; ++bq) {
            double sum = 0;
            for (std::size_t ip = bp * sp; ip < (bp + 1) * sp; ++ip)
                for (std::size_t iq = bq * sq; iq < (bq + 1) * sq; ++iq)
                    sum += field.w_total[field.index(ip, iq)];
            const double v = sum / static_cast<double>(sp * sq) / scale;
            fmt::print(os, "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                       margin_l + cw * static_cast<double>(bp),
                       margin_t + side - ch * static_cast<double>(bq + 1), cw + 0.05, ch + 0.05, diverging(v));
        }
    }
    fmt::print(os, "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", margin_l,
               margin_t, side, side);
    const double p0 = field.p_grid.front() / n_particles, p1 = field.p_grid.back() / n_particles;
    const double q0 = field.q_grid.front(), q1 = field.q_grid.back();
    for (int i = 0; i <= 4; ++i) {
        const double f = i / 4.0;
        fmt::print(os, "<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", margin_l + side * f,
                   margin_t + side + 18, p0 + (p1 - p0) * f);
        fmt::print(os, "<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3g}</text>\n", margin_l - 6,
                   margin_t + side * (1 - f) + 4, q0 + (q1 - q0) * f);
    }
    fmt::print(os, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">p / N</text>\n", margin_l + side / 2, height - 8);
    fmt::print(os, "<text x=\"16\" y=\"{0}\" transform=\"rotate(-90 16 {0})\" text-anchor=\"middle\">q</text>\n",
               margin_t + side / 2);
    os << "</svg>\n";
}

}  // namespace ringdeco::cli
