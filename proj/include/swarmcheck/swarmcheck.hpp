#pragma once

// Swarm reliability diagnostics for simulated swarms, plus the sweep harness
// that checks how they scale with n.

#include "swarmcheck/controllers.hpp"
#include "swarmcheck/core.hpp"
#include "swarmcheck/engine.hpp"
#include "swarmcheck/error.hpp"
#include "swarmcheck/harness.hpp"
#include "swarmcheck/io.hpp"
#include "swarmcheck/metrics.hpp"
#include "swarmcheck/random.hpp"
#include "swarmcheck/scenario.hpp"
#include "swarmcheck/spatial_grid.hpp"
#include "swarmcheck/symmetric_eigen.hpp"
