#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "colstream/mapping.hpp"
#include "colstream/text.hpp"

// Closed-form cycle models and the engine-vs-baseline comparison sweep.
//
// This work:  k passes per filter column, each ceil(events / 2) injection
//             cycles (two buses) plus k drain cycles, with
//             events = (n - k + 1) * (n + (S - 1)(k - 1)).
// Baseline:   the reference streaming accelerator decomposes a filter into
//             3 x 3 sub-filters, zero-padding k up to k' = 3 * ceil(k / 3),
//             and streams the full n x n map once per sub-filter at one
//             element per cycle: ceil(k / 3)^2 * n^2 cycles. The padded
//             weight positions do real work on zeros; this engine never
//             schedules a padding element.

namespace colstream {

/// Total cycles for one filter/channel on the streaming engine (F = C = 1).
inline std::int64_t cycles_this_work(int n, int k) {
    const ColumnSetPlan plan = decompose_column(n, k);
    const std::int64_t events = static_cast<std::int64_t>(n - k + 1) * plan.streamed_elements;
    const std::int64_t per_pass = (events + 1) / 2 + k;
    return static_cast<std::int64_t>(k) * per_pass;
}

/// Baseline cycles: one full-map pass per zero-padded 3 x 3 sub-filter.
inline std::int64_t cycles_baseline(int n, int k) {
    classify_kernel(k);
    if (n < k) throw InvalidShapeError("cycles_baseline: n smaller than kernel");
    const std::int64_t subfilters_per_side = (k + 2) / 3;  // ceil(k / 3)
    return subfilters_per_side * subfilters_per_side * static_cast<std::int64_t>(n) * n;
}

/// Zero-valued weight positions the baseline applies per output map.
inline std::int64_t padded_elements_baseline(int n, int k) {
    classify_kernel(k);
    if (n < k) throw InvalidShapeError("padded_elements_baseline: n smaller than kernel");
    const std::int64_t padded_k = 3 * ((k + 2) / 3);
    const std::int64_t m = n - k + 1;
    return (padded_k * padded_k - static_cast<std::int64_t>(k) * k) * m * m;
}

enum class CycleVerdict { Fewer, Similar, More };

inline const char* verdict_name(CycleVerdict v) {
    switch (v) {
        case CycleVerdict::Fewer: return "fewer";
        case CycleVerdict::Similar: return "similar";
        case CycleVerdict::More: return "more";
    }
    return "?";
}

// |ratio - 1| <= 5% counts as similar for report labels.
inline constexpr double kSimilarBand = 0.05;

struct ComparisonRow {
    int k = 0;
    std::int64_t cycles_this = 0;
    std::int64_t cycles_baseline = 0;
    double ratio = 0.0;  // this / baseline
    CycleVerdict classification = CycleVerdict::Similar;
    std::int64_t padded_elements_baseline = 0;
};

inline ComparisonRow compare_at(int n, int k) {
    ComparisonRow row;
    row.k = k;
    row.cycles_this = cycles_this_work(n, k);
    row.cycles_baseline = cycles_baseline(n, k);
    row.ratio = static_cast<double>(row.cycles_this) / static_cast<double>(row.cycles_baseline);
    if (row.ratio < 1.0 - kSimilarBand)
        row.classification = CycleVerdict::Fewer;
    else if (row.ratio > 1.0 + kSimilarBand)
        row.classification = CycleVerdict::More;
    else
        row.classification = CycleVerdict::Similar;
    row.padded_elements_baseline = padded_elements_baseline(n, k);
    return row;
}

inline std::vector<ComparisonRow> compare_sweep(int n, int k_min, int k_max) {
    if (k_min > k_max || k_min < 3 || k_max > 11)
        throw std::invalid_argument("compare_sweep: kernel range [" + std::to_string(k_min) + ", " +
                                    std::to_string(k_max) + "] must be a non-empty subrange of [3, 11]");
    std::vector<ComparisonRow> rows;
    rows.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    for (int k = k_min; k <= k_max; ++k) rows.push_back(compare_at(n, k));
    return rows;
}

inline constexpr const char* kComparisonCsvHeader = "k,cycles_this,cycles_baseline,ratio,classification,padded_elements_baseline";

inline void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
    os << kComparisonCsvHeader << "\n";
    for (const ComparisonRow& r : rows) {
        os << r.k << ',' << r.cycles_this << ',' << r.cycles_baseline << ',' << format_double(r.ratio) << ','
           << verdict_name(r.classification) << ',' << r.padded_elements_baseline << "\n";
    }
}

inline std::vector<ComparisonRow> parse_comparison_csv(std::istream& is) {
    std::vector<ComparisonRow> rows;
    std::string line;
    if (!std::getline(is, line) || line != kComparisonCsvHeader)
        throw std::invalid_argument("parse_comparison_csv: missing or wrong header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 6) throw std::invalid_argument("parse_comparison_csv: expected 6 fields, got line '" + line + "'");
        ComparisonRow r;
        r.k = static_cast<int>(parse_int(f[0]));
        r.cycles_this = parse_int(f[1]);
        r.cycles_baseline = parse_int(f[2]);
        r.ratio = parse_double(f[3]);
        if (f[4] == "fewer") r.classification = CycleVerdict::Fewer;
        else if (f[4] == "similar") r.classification = CycleVerdict::Similar;
        else if (f[4] == "more") r.classification = CycleVerdict::More;
        else throw std::invalid_argument("parse_comparison_csv: bad classification '" + f[4] + "'");
        r.padded_elements_baseline = parse_int(f[5]);
        rows.push_back(r);
    }
    return rows;
}

/// Minimal two-series line chart of cycles vs k (this work in orange, baseline in blue).
inline std::string comparison_svg(const std::vector<ComparisonRow>& rows) {
    const int width = 640, height = 420;
    const int left = 70, right = 20, top = 30, bottom = 50;
    const int plot_w = width - left - right, plot_h = height - top - bottom;

    std::int64_t max_cycles = 1;
    for (const ComparisonRow& r : rows) max_cycles = std::max({max_cycles, r.cycles_this, r.cycles_baseline});
    const int k_min = rows.front().k, k_max = rows.back().k;

    auto x_of = [&](int k) {
        if (k_max == k_min) return static_cast<double>(left + plot_w / 2);
        return left + static_cast<double>(k - k_min) / (k_max - k_min) * plot_w;
    };
    auto y_of = [&](std::int64_t cycles) {
        return top + plot_h - static_cast<double>(cycles) / static_cast<double>(max_cycles) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
        << "\" stroke=\"black\"/>\n";
    for (const ComparisonRow& r : rows) {
        svg << "<text x=\"" << format_double(x_of(r.k)) << "\" y=\"" << top + plot_h + 18
            << "\" font-size=\"12\" text-anchor=\"middle\">" << r.k << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 12 << "\" font-size=\"13\" text-anchor=\"middle\">kernel size k</text>\n";
    svg << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << top + plot_h / 2 << ")\">cycles</text>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << top + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << max_cycles
        << "</text>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << top + plot_h + 4 << "\" font-size=\"11\" text-anchor=\"end\">0</text>\n";

    auto polyline = [&](const char* color, auto value_of) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const ComparisonRow& r : rows)
            svg << format_double(x_of(r.k)) << ',' << format_double(y_of(value_of(r))) << ' ';
        svg << "\"/>\n";
    };
    polyline("#0072b2", [](const ComparisonRow& r) { return r.cycles_baseline; });  // baseline, blue
    polyline("#e69f00", [](const ComparisonRow& r) { return r.cycles_this; });      // this work, orange
    svg << "<text x=\"" << left + 10 << "\" y=\"" << top + 16 << "\" font-size=\"12\" fill=\"#e69f00\">this work</text>\n";
    svg << "<text x=\"" << left + 10 << "\" y=\"" << top + 32 << "\" font-size=\"12\" fill=\"#0072b2\">baseline</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace colstream
