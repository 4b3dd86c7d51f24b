#include "kesten/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <fstream>

#include "kesten/errors.hpp"

namespace kesten {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_long(long v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void CsvWriter::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) throw NumericalError("csv: row width does not match header");
    rows_.push_back(std::move(cells));
}

namespace {

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void CsvWriter::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw ConfigError("csv: cannot write " + path.string());
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << csv_escape(columns_[i]);
    out << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
        out << "\n";
    }
}

namespace {

struct Extent {
    double lo = 0.0, hi = 1.0;
};

Extent extent_of(const std::vector<ChartSeries>& series, bool x_axis, bool log_scale) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            const double v = x_axis ? x : y;
            if (log_scale && !(v > 0.0)) continue;
            const double t = log_scale ? std::log10(v) : v;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    if (!(lo < hi)) {
        lo = std::isfinite(lo) ? lo - 0.5 : 0.0;
        hi = lo + 1.0;
    }
    return {lo, hi};
}

}  // namespace

void write_svg_line_chart(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<ChartSeries>& series, bool log_x,
                          bool log_y) {
    constexpr double w = 640, h = 440, ml = 70, mr = 20, mt = 40, mb = 50;
    const Extent ex = extent_of(series, true, log_x);
    const Extent ey = extent_of(series, false, log_y);
    auto sx = [&](double x) {
        const double t = log_x ? std::log10(x) : x;
        return ml + (t - ex.lo) / (ex.hi - ex.lo) * (w - ml - mr);
    };
    auto sy = [&](double y) {
        const double t = log_y ? std::log10(y) : y;
        return h - mb - (t - ey.lo) / (ey.hi - ey.lo) * (h - mt - mb);
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("svg: cannot write " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
        << w << " " << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
        << "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double tx = ex.lo + (ex.hi - ex.lo) * i / 4.0;
        const double vx = log_x ? std::pow(10.0, tx) : tx;
        const double px = ml + (tx - ex.lo) / (ex.hi - ex.lo) * (w - ml - mr);
        out << "<line x1=\"" << px << "\" y1=\"" << h - mb << "\" x2=\"" << px << "\" y2=\"" << h - mb + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << h - mb + 20 << "\" text-anchor=\"middle\" font-size=\"11\">"
            << format_double(log_x ? vx : std::round(tx * 1000.0) / 1000.0) << "</text>\n";
        const double ty = ey.lo + (ey.hi - ey.lo) * i / 4.0;
        const double vy = log_y ? std::pow(10.0, ty) : ty;
        const double py = h - mb - (ty - ey.lo) / (ey.hi - ey.lo) * (h - mt - mb);
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml << "\" y2=\"" << py
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
            << format_double(log_y ? vy : std::round(ty * 1000.0) / 1000.0) << "</text>\n";
    }
    out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
        << x_label << (log_x ? " (log scale)" : "") << "</text>\n";
    out << "<text x=\"18\" y=\"" << (mt + h - mb) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
        << (mt + h - mb) / 2 << ")\">" << y_label << (log_y ? " (log scale)" : "") << "</text>\n";

    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    int ci = 0;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[ci % 4] << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) out << sx(x) << "," << sy(y) << " ";
        out << "\"/>\n";
        for (const auto& [x, y] : s.points)
            out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"2.5\" fill=\"" << colors[ci % 4]
                << "\"/>\n";
        if (!s.label.empty())
            out << "<text x=\"" << w - mr - 5 << "\" y=\"" << mt + 15 + 15 * ci
                << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << colors[ci % 4] << "\">" << s.label
                << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

void write_manifest(const std::filesystem::path& dir, const std::string& command, const nlohmann::json& config_echo,
                    std::uint64_t seed, int threads, const std::vector<std::string>& outputs) {
    nlohmann::json m;
    m["artifact_version"] = "0.1.0";
    m["command"] = command;
    m["config"] = config_echo;
    m["seed"] = seed;
    m["threads"] = threads;
    m["outputs"] = outputs;
    const auto now = std::chrono::system_clock::now();
    m["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw ConfigError("manifest: cannot write in " + dir.string());
    out << m.dump(2) << "\n";
}

}  // namespace kesten
