#pragma once

// Umbrella header for the numerical core.

#include "morrey/error.hpp"
#include "morrey/exponents.hpp"
#include "morrey/grid.hpp"
#include "morrey/norms.hpp"
#include "morrey/special.hpp"
#include "morrey/spectral.hpp"
#include "morrey/testfns.hpp"
#include "morrey/types.hpp"
