#pragma once

// Umbrella header: the whole library.

#include "heatrk/common.hpp"
#include "heatrk/control.hpp"
#include "heatrk/geometry.hpp"
#include "heatrk/heat_series.hpp"
#include "heatrk/io.hpp"
#include "heatrk/kernels.hpp"
#include "heatrk/parallel.hpp"
#include "heatrk/quadrature.hpp"
#include "heatrk/verification.hpp"
