#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "colstream/errors.hpp"

// Reference convolution semantics. Everything here is exact integer
// arithmetic: samples and weights are signed 16-bit, accumulation is signed
// 64-bit, no rounding or saturation anywhere. This module is the ground
// truth the streaming engine is checked against.

namespace colstream {

using Sample = std::int16_t;  // feature / weight storage
using Acc = std::int64_t;     // accumulator

/// Output height/width of a convolution: floor((n - k) / s) + 1.
inline int output_dim(int n, int k, int s) {
    if (k < 1) throw InvalidShapeError("output_dim: kernel size must be >= 1, got " + std::to_string(k));
    if (k > n) throw InvalidShapeError("output_dim: kernel " + std::to_string(k) + " larger than input " + std::to_string(n));
    if (s < 1) throw InvalidShapeError("output_dim: stride must be >= 1, got " + std::to_string(s));
    return (n - k) / s + 1;
}

// One channel of a layer input, row-major.
struct FeatureMap {
    int height = 0;
    int width = 0;
    std::vector<Sample> data;

    FeatureMap() = default;
    FeatureMap(int h, int w) : height(h), width(w), data(static_cast<std::size_t>(h) * w, 0) {}
    FeatureMap(int h, int w, std::vector<Sample> values) : height(h), width(w), data(std::move(values)) {
        if (data.size() != static_cast<std::size_t>(h) * w)
            throw InvalidShapeError("FeatureMap: data length does not match height*width");
    }

    Sample at(int r, int c) const { return data[static_cast<std::size_t>(r) * width + c]; }
    Sample& at(int r, int c) { return data[static_cast<std::size_t>(r) * width + c]; }
    bool square() const { return height == width; }
};

// F output filters x C input channels of k x k weights, one bias per filter.
struct FilterSet {
    int out_filters = 0;   // F
    int in_channels = 0;   // C
    int kernel_size = 0;   // k
    std::vector<Sample> weights;       // [f][c][i][j] row-major
    std::vector<std::int32_t> bias;    // [f]

    FilterSet() = default;
    FilterSet(int f, int c, int k)
        : out_filters(f), in_channels(c), kernel_size(k),
          weights(static_cast<std::size_t>(f) * c * k * k, 0), bias(static_cast<std::size_t>(f), 0) {}

    Sample weight(int f, int c, int i, int j) const {
        return weights[((static_cast<std::size_t>(f) * in_channels + c) * kernel_size + i) * kernel_size + j];
    }
    Sample& weight(int f, int c, int i, int j) {
        return weights[((static_cast<std::size_t>(f) * in_channels + c) * kernel_size + i) * kernel_size + j];
    }
    /// View of the k x k kernel for (filter f, channel c).
    std::span<const Sample> kernel(int f, int c) const {
        const std::size_t kk = static_cast<std::size_t>(kernel_size) * kernel_size;
        return {weights.data() + (static_cast<std::size_t>(f) * in_channels + c) * kk, kk};
    }

    bool consistent() const {
        return weights.size() == static_cast<std::size_t>(out_filters) * in_channels * kernel_size * kernel_size &&
               bias.size() == static_cast<std::size_t>(out_filters);
    }
};

// m x m grid of signed 64-bit accumulators.
struct OutputMap {
    int size = 0;  // m
    std::vector<Acc> data;

    OutputMap() = default;
    explicit OutputMap(int m) : size(m), data(static_cast<std::size_t>(m) * m, 0) {}

    Acc at(int r, int c) const { return data[static_cast<std::size_t>(r) * size + c]; }
    Acc& at(int r, int c) { return data[static_cast<std::size_t>(r) * size + c]; }

    friend bool operator==(const OutputMap&, const OutputMap&) = default;
};

/// Direct single-channel convolution: out[r][c] = sum_{i,j} map[r*s+i][c*s+j] * w[i][j].
inline OutputMap conv2d(const FeatureMap& map, std::span<const Sample> kernel, int k, int s) {
    if (!map.square()) throw InvalidShapeError("conv2d: feature map must be square");
    if (kernel.size() != static_cast<std::size_t>(k) * k)
        throw InvalidShapeError("conv2d: kernel span does not hold k*k weights");
    const int n = map.height;
    const int m = output_dim(n, k, s);

    OutputMap out(m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            Acc acc = 0;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    acc += static_cast<Acc>(map.at(r * s + i, c * s + j)) * kernel[static_cast<std::size_t>(i) * k + j];
            out.at(r, c) = acc;
        }
    }
    return out;
}

/// Full layer: out_f = sum_c conv2d(in_c, w_{f,c}, s) + B_f added to every element.
inline std::vector<OutputMap> conv_layer(const std::vector<FeatureMap>& inputs, const FilterSet& filters, int s) {
    if (!filters.consistent()) throw InvalidShapeError("conv_layer: filter set dimensions inconsistent");
    if (static_cast<int>(inputs.size()) != filters.in_channels)
        throw InvalidShapeError("conv_layer: got " + std::to_string(inputs.size()) + " channels, filter set expects " +
                                std::to_string(filters.in_channels));
    for (const auto& in : inputs) {
        if (!in.square() || in.height != inputs.front().height)
            throw InvalidShapeError("conv_layer: all input channels must be square and same shape");
    }

    const int k = filters.kernel_size;
    const int m = output_dim(inputs.front().height, k, s);

    std::vector<OutputMap> outs;
    outs.reserve(filters.out_filters);
    for (int f = 0; f < filters.out_filters; ++f) {
        OutputMap sum(m);
        for (int c = 0; c < filters.in_channels; ++c) {
            OutputMap part = conv2d(inputs[c], filters.kernel(f, c), k, s);
            for (std::size_t i = 0; i < sum.data.size(); ++i) sum.data[i] += part.data[i];
        }
        for (Acc& v : sum.data) v += filters.bias[f];
        outs.push_back(std::move(sum));
    }
    return outs;
}

}  // namespace colstream
