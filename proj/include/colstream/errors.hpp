#pragma once

#include <stdexcept>
#include <string>

namespace colstream {

// Shape preconditions violated (kernel larger than input, channel mismatch, ...).
struct InvalidShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Kernel size outside the supported [3, 11] range, or PE column shorter than the kernel.
struct UnsupportedKernelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The engine streams stride-1 convolutions only.
struct UnsupportedStrideError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Accelerator record with a non-positive compute/power/area figure.
struct InvalidRecordError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace colstream
