#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "colstream/errors.hpp"

// Column-set decomposition and the two-bus element-injection schedule.
//
// Each input column of height n is cut into sets of L elements (L = 21 for
// kernels 3..5, L = 15 for kernels 6..11). Consecutive sets overlap k - 1
// rows so every k-high window lands fully inside exactly one set; the last
// set is truncated, never shifted. A pass streams, for one latched filter
// column p, the feature columns x in [p, p + m - 1], set by set, rows
// ascending; events are packed greedily two per cycle onto bus 0 / bus 1.

namespace colstream {

enum class KernelClassTag { Small, Large };

struct KernelClass {
    KernelClassTag tag;
    int set_len;  // L, elements per column set
};

/// 3..5 -> (Small, 21); 6..11 -> (Large, 15).
inline KernelClass classify_kernel(int k) {
    if (k >= 3 && k <= 5) return {KernelClassTag::Small, 21};
    if (k >= 6 && k <= 11) return {KernelClassTag::Large, 15};
    throw UnsupportedKernelError("kernel size " + std::to_string(k) + " outside supported range [3, 11]");
}

struct ColumnSet {
    int start_row;
    int length;
};

struct ColumnSetPlan {
    int n = 0;
    int k = 0;
    int set_len = 0;    // L
    int step = 0;       // L - k + 1, window starts covered per full set
    int set_count = 0;  // S
    std::vector<ColumnSet> sets;
    std::int64_t streamed_elements = 0;  // n + (S - 1)(k - 1), overlap rows replicated
};

inline ColumnSetPlan decompose_column(int n, int k) {
    const KernelClass cls = classify_kernel(k);
    if (n < k)
        throw InvalidShapeError("decompose_column: input height " + std::to_string(n) + " smaller than kernel " +
                                std::to_string(k));

    ColumnSetPlan plan;
    plan.n = n;
    plan.k = k;
    plan.set_len = cls.set_len;
    plan.step = cls.set_len - k + 1;
    // One full set covers `step` window starts; S sets cover all n - k + 1.
    plan.set_count = static_cast<int>((n - k + 1 + plan.step - 1) / plan.step);
    plan.sets.reserve(plan.set_count);
    for (int i = 0; i < plan.set_count; ++i) {
        const int start = i * plan.step;
        const int len = (i + 1 < plan.set_count) ? plan.set_len : n - start;
        plan.sets.push_back({start, len});
    }
    plan.streamed_elements = static_cast<std::int64_t>(n) + static_cast<std::int64_t>(plan.set_count - 1) * (k - 1);
    return plan;
}

// One element-injection event. bus = seq % 2; cycle = seq / 2 (0-based per pass).
struct StreamEvent {
    std::int64_t seq;
    std::int64_t cycle;
    int bus;         // 0 or 1
    int col;         // feature column x
    int set;         // column-set index
    int row_in_set;  // 0..set length - 1
    int global_row;  // set start + row_in_set, always a real input row
};

struct StreamSchedule {
    int n = 0;
    int k = 0;
    int m = 0;  // n - k + 1 output rows/columns (stride 1)
    ColumnSetPlan plan;
    std::int64_t events_per_pass = 0;        // m * streamed_elements
    std::int64_t injection_cycles_per_pass = 0;  // ceil(events / 2)

    int pass_count() const { return k; }

    /// Enumerate pass p in schedule order: columns x in [p, p+m-1] ascending,
    /// sets ascending, rows ascending. fn receives each StreamEvent.
    template <typename Fn>
    void for_each_event(int pass, Fn&& fn) const {
        std::int64_t seq = 0;
        for (int x = pass; x < pass + m; ++x) {
            for (int si = 0; si < plan.set_count; ++si) {
                const ColumnSet& set = plan.sets[si];
                for (int row = 0; row < set.length; ++row) {
                    fn(StreamEvent{seq, seq / 2, static_cast<int>(seq % 2), x, si, row, set.start_row + row});
                    ++seq;
                }
            }
        }
    }

    std::vector<StreamEvent> events(int pass) const {
        std::vector<StreamEvent> out;
        out.reserve(static_cast<std::size_t>(events_per_pass));
        for_each_event(pass, [&](const StreamEvent& e) { out.push_back(e); });
        return out;
    }
};

inline StreamSchedule build_schedule(int n, int k) {
    StreamSchedule sched;
    sched.plan = decompose_column(n, k);
    sched.n = n;
    sched.k = k;
    sched.m = n - k + 1;
    sched.events_per_pass = static_cast<std::int64_t>(sched.m) * sched.plan.streamed_elements;
    sched.injection_cycles_per_pass = (sched.events_per_pass + 1) / 2;
    return sched;
}

/// Dump one pass as JSON lines, one event per line.
inline void write_schedule_jsonl(std::ostream& os, const StreamSchedule& sched, int pass) {
    sched.for_each_event(pass, [&](const StreamEvent& e) {
        os << "{\"pass\":" << pass << ",\"seq\":" << e.seq << ",\"cycle\":" << e.cycle << ",\"bus\":" << e.bus
           << ",\"col\":" << e.col << ",\"set\":" << e.set << ",\"row_in_set\":" << e.row_in_set
           << ",\"global_row\":" << e.global_row << "}\n";
    });
}

// Utilization of one physical PE column of height H when kernels are k high.
struct SpareReport {
    int k = 0;
    int physical_col_height = 0;        // H
    int logical_cols_per_physical = 0;  // floor(H / k)
    int spare_pes_per_physical_col = 0; // H mod k
    double utilization = 0.0;           // k * floor(H / k) / H
};

inline SpareReport spare_pe_report(int H, int k) {
    classify_kernel(k);  // same supported range as the engine
    if (H < k)
        throw UnsupportedKernelError("spare_pe_report: PE column height " + std::to_string(H) +
                                     " shorter than kernel " + std::to_string(k));
    SpareReport r;
    r.k = k;
    r.physical_col_height = H;
    r.logical_cols_per_physical = H / k;
    r.spare_pes_per_physical_col = H % k;
    r.utilization = static_cast<double>(k * r.logical_cols_per_physical) / H;
    return r;
}

}  // namespace colstream
