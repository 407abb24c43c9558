#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "colstream/errors.hpp"
#include "colstream/text.hpp"

// Survey metric for edge accelerators: E = cFixed16 / (p * s), with compute
// expressed in GOPs at 16-bit fixed precision, power in watts and area in
// mm^2. Records carry the published E verbatim so discrepancies surface in
// validation instead of being silently corrected.

namespace colstream {

enum class AreaKind { Core, Chip };

inline const char* area_kind_name(AreaKind a) { return a == AreaKind::Core ? "core" : "chip"; }

struct AcceleratorRecord {
    std::string name;
    int year = 0;
    double compute_gops = 0;  // cFixed16, after precision conversion
    std::string precision_label;
    double power_w = 0;
    double area_mm2 = 0;
    AreaKind area_kind = AreaKind::Chip;
    std::optional<double> paper_e;  // printed evaluation value, if published
};

// Conversion factors into 16-bit-fixed GOPs, keyed by precision label.
// Entries absent from the table are taken as printed (factor 1).
inline constexpr std::pair<std::string_view, double> kPrecisionScale[] = {
    {"INT8", 0.5},
};

inline double fixed16_gops(double raw_gops, std::string_view precision) {
    for (const auto& [label, factor] : kPrecisionScale)
        if (label == precision) return raw_gops * factor;
    return raw_gops;
}

/// E = compute / (power * area).
inline double evaluation_value(const AcceleratorRecord& rec) {
    if (rec.compute_gops <= 0 || rec.power_w <= 0 || rec.area_mm2 <= 0)
        throw InvalidRecordError("evaluation_value: record '" + rec.name + "' has a non-positive figure");
    return rec.compute_gops / (rec.power_w * rec.area_mm2);
}

/// The published survey rows. Eyeriss appears twice (chip and core area), 11 rows total.
inline std::vector<AcceleratorRecord> builtin_dataset() {
    return {
        {"Kneron", 2018, 152.0, "16-bit Fixed", 0.35, 5.0, AreaKind::Core, 86.86},
        {"Eyeriss-chip", 2016, 84.0, "16-bit Fixed", 0.278, 16.0, AreaKind::Chip, 18.88},
        {"Eyeriss-core", 2016, 84.0, "16-bit Fixed", 0.278, 12.25, AreaKind::Core, 24.66},
        {"1.42TOPS/W", 2016, 64.0, "16-bit Fixed", 0.045, 16.0, AreaKind::Chip, 88.88},
        // Printed as 4 TOPs; 4096 GOPs of INT8 converts to 2048, which reproduces the printed E.
        {"Edge TPU", 2018, fixed16_gops(4096.0, "INT8"), "INT8", 2.0, 25.0, AreaKind::Chip, 40.96},
        {"ADRES", 2017, 26.4, "32-bit FP", 0.1156, 0.64, AreaKind::Chip, 356.84},
        {"VERSAT", 2016, 7.02, "32-bit Fixed", 0.044, 0.4, AreaKind::Chip, 398.86},
        {"SOFT-BRAIN", 2017, 452.0, "64-bit Fixed", 0.9544, 3.76, AreaKind::Chip, 125.96},
        {"REDEFINE", 2016, 201.6, "32-bit Fixed", 1.22, 5.7, AreaKind::Chip, 29.48},
        {"DT-CGRA", 2016, 95.0, "16-bit Fixed", 1.79, 3.79, AreaKind::Chip, 14.0},
        {"PULP", 2018, 0.170, "16-bit Fixed", 0.00044, 0.872, AreaKind::Chip, 443.08},
    };
}

struct ValidationRow {
    std::string name;
    double computed_e = 0;
    double paper_e = 0;
    double relative_delta = 0;  // |computed - published| / published
};

/// Recompute E for every record carrying a published value.
inline std::vector<ValidationRow> validate_dataset(const std::vector<AcceleratorRecord>& records) {
    std::vector<ValidationRow> rows;
    for (const AcceleratorRecord& rec : records) {
        if (!rec.paper_e) continue;
        ValidationRow row;
        row.name = rec.name;
        row.computed_e = evaluation_value(rec);
        row.paper_e = *rec.paper_e;
        row.relative_delta = std::abs(row.computed_e - row.paper_e) / row.paper_e;
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Scale each record linearly to the same compute grade: power and area
/// scale with f = target / compute. E is not preserved under this scaling.
inline std::vector<AcceleratorRecord> normalize(const std::vector<AcceleratorRecord>& records, double target_gops) {
    if (target_gops <= 0) throw InvalidRecordError("normalize: target compute must be positive");
    std::vector<AcceleratorRecord> out;
    out.reserve(records.size());
    for (const AcceleratorRecord& rec : records) {
        if (rec.compute_gops <= 0 || rec.power_w <= 0 || rec.area_mm2 <= 0)
            throw InvalidRecordError("normalize: record '" + rec.name + "' has a non-positive figure");
        const double f = target_gops / rec.compute_gops;
        AcceleratorRecord scaled = rec;
        scaled.compute_gops = target_gops;
        scaled.power_w = rec.power_w * f;
        scaled.area_mm2 = rec.area_mm2 * f;
        out.push_back(std::move(scaled));
    }
    return out;
}

inline constexpr const char* kRecordCsvHeader = "name,year,compute_gops,precision,power_w,area_mm2,area_kind,paper_e";

inline void write_records_csv(std::ostream& os, const std::vector<AcceleratorRecord>& records) {
    os << kRecordCsvHeader << "\n";
    for (const AcceleratorRecord& r : records) {
        os << r.name << ',' << r.year << ',' << format_double(r.compute_gops) << ',' << r.precision_label << ','
           << format_double(r.power_w) << ',' << format_double(r.area_mm2) << ',' << area_kind_name(r.area_kind) << ','
           << (r.paper_e ? format_double(*r.paper_e) : std::string{}) << "\n";
    }
}

inline std::vector<AcceleratorRecord> read_records_csv(std::istream& is) {
    std::vector<AcceleratorRecord> records;
    std::string line;
    if (!std::getline(is, line) || line != kRecordCsvHeader)
        throw std::invalid_argument("read_records_csv: missing or wrong header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8) throw std::invalid_argument("read_records_csv: expected 8 fields, got line '" + line + "'");
        AcceleratorRecord r;
        r.name = f[0];
        r.year = static_cast<int>(parse_int(f[1]));
        r.compute_gops = parse_double(f[2]);
        r.precision_label = f[3];
        r.power_w = parse_double(f[4]);
        r.area_mm2 = parse_double(f[5]);
        if (f[6] == "core") r.area_kind = AreaKind::Core;
        else if (f[6] == "chip") r.area_kind = AreaKind::Chip;
        else throw std::invalid_argument("read_records_csv: bad area kind '" + f[6] + "'");
        if (!f[7].empty()) r.paper_e = parse_double(f[7]);
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace colstream
