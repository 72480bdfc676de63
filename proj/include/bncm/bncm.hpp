#pragma once

// Bottleneck matchings of planar point sets: an exact (possibly crossing)
// bottleneck matching, a guaranteed-factor non-crossing conversion, exact
// solvers for convex position and cocircular points, and a brute-force
// oracle for small instances.

#include "bncm/approx_noncross.hpp"
#include "bncm/bottleneck_exact.hpp"
#include "bncm/circle_solver.hpp"
#include "bncm/convex_dp.hpp"
#include "bncm/errors.hpp"
#include "bncm/generators.hpp"
#include "bncm/geometry.hpp"
#include "bncm/grid.hpp"
#include "bncm/io.hpp"
#include "bncm/matching.hpp"
#include "bncm/oracle.hpp"
#include "bncm/reduce_rules.hpp"
#include "bncm/rng.hpp"
#include "bncm/stage2.hpp"
#include "bncm/svg.hpp"
