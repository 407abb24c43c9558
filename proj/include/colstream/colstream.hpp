#pragma once

// Umbrella header for the column-streaming convolution engine toolkit.

#include "colstream/conv_core.hpp"
#include "colstream/cycle_models.hpp"
#include "colstream/engine.hpp"
#include "colstream/errors.hpp"
#include "colstream/mapping.hpp"
#include "colstream/prior_art.hpp"
#include "colstream/prng.hpp"
#include "colstream/text.hpp"
