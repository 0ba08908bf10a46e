#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace costbound::cli {

/// Round-trip exact decimal form (17 significant digits).
std::string format_double(double x);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& row();
    CsvWriter& cell(double x);
    CsvWriter& cell(long long x);
    CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
    CsvWriter& cell(const std::string& text);

    std::string str() const;
    void save(const std::filesystem::path& path) const;

private:
    std::size_t columns_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::filesystem::path& path, const std::string& text);

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool dashed = false;
};

/// Axes plus one polyline per series.
std::string render_svg(const std::vector<SvgSeries>& series, const std::string& title, const std::string& x_label,
                       const std::string& y_label);

}  // namespace costbound::cli
