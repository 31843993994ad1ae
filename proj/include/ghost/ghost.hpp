#pragma once

#include "ghost/core/field.hpp"
#include "ghost/core/geometry.hpp"
#include "ghost/core/grid.hpp"
#include "ghost/core/mask.hpp"
#include "ghost/core/sampling.hpp"
#include "ghost/correlation/analytic.hpp"
#include "ghost/correlation/monte_carlo.hpp"
#include "ghost/correlation/normalize.hpp"
#include "ghost/experiment/peaks.hpp"
#include "ghost/experiment/scans.hpp"
#include "ghost/experiment/thin_lens.hpp"
#include "ghost/experiment/trace.hpp"
#include "ghost/optics/arm.hpp"
#include "ghost/optics/propagation.hpp"
#include "ghost/source/speckle.hpp"
