#pragma once

// Umbrella header: exact-arithmetic graph free probability.

#include "gfp/cumulants.hpp"
#include "gfp/errors.hpp"
#include "gfp/gfps.hpp"
#include "gfp/graph.hpp"
#include "gfp/noncrossing.hpp"
#include "gfp/problem_io.hpp"
#include "gfp/rational.hpp"
#include "gfp/rtransform.hpp"
