#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "colstream/conv_core.hpp"
#include "colstream/mapping.hpp"

// Cycle-level execution of a StreamSchedule. One cycle injects at most one
// element per bus (two total); every pass appends k drain cycles for the
// last window's multiply-accumulate. Filter columns are processed as
// sequential passes sharing one accumulator grid, so the functional result
// must equal conv_layer() bit for bit.

namespace colstream {

struct EngineConfig {
    int pe_column_height = 11;  // H, must be >= k for an accepted run
    int pe_columns = 8;         // W, configuration only; does not affect cycle counts
    static constexpr int buses = 2;
};

// Shared m x m accumulator, plus a per-element count of partial-sum adds.
struct Accumulator {
    int m = 0;
    std::vector<Acc> sums;
    std::vector<std::uint32_t> adds;

    explicit Accumulator(int m_)
        : m(m_), sums(static_cast<std::size_t>(m_) * m_, 0), adds(static_cast<std::size_t>(m_) * m_, 0) {}
};

struct StreamAudit {
    std::int64_t streamed_elements = 0;
    std::int64_t padded_elements = 0;  // events indexing outside the real input; must stay 0
};

struct EngineReport {
    std::vector<OutputMap> outputs;  // F maps, bias included
    std::int64_t total_cycles = 0;
    std::vector<std::int64_t> per_pass_cycles;  // F * C * k entries
    std::int64_t streamed_elements = 0;
    std::int64_t padded_elements = 0;
    std::uint32_t contribution_min = 0;  // partial-sum adds per output element,
    std::uint32_t contribution_max = 0;  // both must equal k * C
};

/// Column p of a k x k filter, the weights latched for one pass.
inline std::vector<Sample> preload_filter_column(std::span<const Sample> filter, int k, int p) {
    if (filter.size() != static_cast<std::size_t>(k) * k)
        throw InvalidShapeError("preload_filter_column: filter span does not hold k*k weights");
    if (p < 0 || p >= k)
        throw std::invalid_argument("preload_filter_column: pass " + std::to_string(p) + " outside [0, " +
                                    std::to_string(k) + ")");
    std::vector<Sample> col(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) col[i] = filter[static_cast<std::size_t>(i) * k + p];
    return col;
}

/// Stream one pass against a latched filter column, accumulating window
/// partials into acc. Returns the pass cycle count: ceil(events / 2) + k.
inline std::int64_t run_pass(const StreamSchedule& sched, int pass, const FeatureMap& map,
                             std::span<const Sample> column, Accumulator& acc, StreamAudit* audit = nullptr) {
    const int k = sched.k;
    const int n = sched.n;
    const int m = sched.m;
    if (static_cast<int>(column.size()) != k)
        throw InvalidShapeError("run_pass: latched column does not hold k weights");
    if (acc.m != m) throw InvalidShapeError("run_pass: accumulator grid is not m x m");
    if (map.height != n || map.width != n) throw InvalidShapeError("run_pass: feature map does not match schedule");

    // Events of one (x, set) pair arrive contiguously, rows ascending, so a
    // single k-deep window buffer mimics the per-PE-column sliding state.
    std::array<Sample, 16> window{};
    int filled = 0;
    int cur_col = -1, cur_set = -1;

    sched.for_each_event(pass, [&](const StreamEvent& e) {
        if (audit) {
            ++audit->streamed_elements;
            if (e.global_row < 0 || e.global_row >= n || e.col < 0 || e.col >= n) {
                ++audit->padded_elements;
                return;
            }
        }
        if (e.col != cur_col || e.set != cur_set) {
            cur_col = e.col;
            cur_set = e.set;
            filled = 0;
        }
        if (filled == k) {
            std::copy(window.begin() + 1, window.begin() + k, window.begin());
            window[k - 1] = map.at(e.global_row, e.col);
        } else {
            window[filled++] = map.at(e.global_row, e.col);
        }
        if (filled == k) {
            // A full window emits one partial for output row r, column x - pass.
            const int r = e.global_row - k + 1;
            const int out_c = e.col - pass;
            if (r < 0 || r >= m || out_c < 0 || out_c >= m)
                throw std::logic_error("run_pass: window start indexes outside the accumulator grid");
            Acc partial = 0;
            for (int i = 0; i < k; ++i) partial += static_cast<Acc>(window[i]) * column[i];
            const std::size_t idx = static_cast<std::size_t>(r) * m + out_c;
            acc.sums[idx] += partial;
            ++acc.adds[idx];
        }
    });

    return sched.injection_cycles_per_pass + k;
}

/// Full convolution on the streaming engine: F * C * k sequential passes,
/// bias added once per output element at finalize (zero cycle cost).
inline EngineReport run_conv(const std::vector<FeatureMap>& inputs, const FilterSet& filters, int stride,
                             const EngineConfig& cfg = {}) {
    const int k = filters.kernel_size;
    if (k < 3 || k > 11)
        throw UnsupportedKernelError("run_conv: kernel size " + std::to_string(k) + " outside supported range [3, 11]");
    if (stride != 1) throw UnsupportedStrideError("run_conv: stride " + std::to_string(stride) + " unsupported, engine streams stride 1 only");
    if (!filters.consistent()) throw InvalidShapeError("run_conv: filter set dimensions inconsistent");
    if (static_cast<int>(inputs.size()) != filters.in_channels)
        throw InvalidShapeError("run_conv: got " + std::to_string(inputs.size()) + " channels, filter set expects " +
                                std::to_string(filters.in_channels));
    if (inputs.empty()) throw InvalidShapeError("run_conv: no input channels");
    for (const auto& in : inputs) {
        if (!in.square() || in.height != inputs.front().height)
            throw InvalidShapeError("run_conv: all input channels must be square and same shape");
    }
    if (cfg.pe_column_height < k)
        throw UnsupportedKernelError("run_conv: PE column height " + std::to_string(cfg.pe_column_height) +
                                     " shorter than kernel " + std::to_string(k));

    const int n = inputs.front().height;
    const StreamSchedule sched = build_schedule(n, k);

    EngineReport report;
    report.per_pass_cycles.reserve(static_cast<std::size_t>(filters.out_filters) * filters.in_channels * k);
    StreamAudit audit;
    report.contribution_min = 0;
    report.contribution_max = 0;
    bool first_filter = true;

    for (int f = 0; f < filters.out_filters; ++f) {
        Accumulator acc(sched.m);
        for (int c = 0; c < filters.in_channels; ++c) {
            for (int p = 0; p < k; ++p) {
                const std::vector<Sample> col = preload_filter_column(filters.kernel(f, c), k, p);
                const std::int64_t cycles = run_pass(sched, p, inputs[c], col, acc, &audit);
                report.per_pass_cycles.push_back(cycles);
                report.total_cycles += cycles;
            }
        }
        const auto [lo, hi] = std::minmax_element(acc.adds.begin(), acc.adds.end());
        if (first_filter) {
            report.contribution_min = *lo;
            report.contribution_max = *hi;
            first_filter = false;
        } else {
            report.contribution_min = std::min(report.contribution_min, *lo);
            report.contribution_max = std::max(report.contribution_max, *hi);
        }

        OutputMap out(sched.m);
        for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = acc.sums[i] + filters.bias[f];
        report.outputs.push_back(std::move(out));
    }

    report.streamed_elements = audit.streamed_elements;
    report.padded_elements = audit.padded_elements;
    return report;
}

struct VerificationReport {
    bool equal = false;
    Acc max_abs_diff = 0;
    EngineReport engine;
    std::vector<OutputMap> oracle;
};

/// Run both the engine and the direct-convolution oracle; results must match exactly.
inline VerificationReport verify_against_oracle(const std::vector<FeatureMap>& inputs, const FilterSet& filters,
                                                const EngineConfig& cfg = {}) {
    VerificationReport v;
    v.engine = run_conv(inputs, filters, 1, cfg);
    v.oracle = conv_layer(inputs, filters, 1);
    v.equal = true;
    v.max_abs_diff = 0;
    for (std::size_t f = 0; f < v.oracle.size(); ++f) {
        for (std::size_t i = 0; i < v.oracle[f].data.size(); ++i) {
            const Acc diff = std::abs(v.engine.outputs[f].data[i] - v.oracle[f].data[i]);
            if (diff != 0) v.equal = false;
            v.max_abs_diff = std::max(v.max_abs_diff, diff);
        }
    }
    return v;
}

}  // namespace colstream
