#ifndef KESTEN_REPORT_HPP
#define KESTEN_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace kesten {

// Shortest round-trip decimal form via std::to_chars: locale-independent,
// '.' decimal point, byte-stable across runs and platforms with IEEE doubles.
std::string format_double(double v);
std::string format_long(long v);

// Fixed column order, stable row order as added, LF line endings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add_row(std::vector<std::string> cells);
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

struct ChartSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Minimal hand-emitted SVG line chart; log scaling is baked into the
// coordinates before drawing.
void write_svg_line_chart(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<ChartSeries>& series, bool log_x, bool log_y);

// Provenance stamp for one run directory. Timestamps live only here, never
// in the CSVs, so numerical outputs stay byte-comparable.
void write_manifest(const std::filesystem::path& dir, const std::string& command, const nlohmann::json& config_echo,
                    std::uint64_t seed, int threads, const std::vector<std::string>& outputs);

}  // namespace kesten

#endif  // KESTEN_REPORT_HPP
