#pragma once

// Numerical model of the Afshar double-slit bench: free-space path-integral
// propagation of scalar fields through slits, a wire grid on the fringe
// minima and an imaging lens, with which-way distinguishability and fringe
// visibility as the observables.

#include "acceptance.hpp"
#include "analysis.hpp"
#include "config.hpp"
#include "elements.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "field.hpp"
#include "grid.hpp"
#include "observables.hpp"
#include "propagator.hpp"
#include "runner.hpp"
#include "version.hpp"
