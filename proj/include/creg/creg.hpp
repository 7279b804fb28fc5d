#pragma once

// Umbrella header for the whole library.

#include "creg/causal_set.hpp"
#include "creg/cli_commands.hpp"
#include "creg/enumerate.hpp"
#include "creg/errors.hpp"
#include "creg/minkowski.hpp"
#include "creg/model_io.hpp"
#include "creg/rational.hpp"
#include "creg/region_expr.hpp"
#include "creg/stochastic.hpp"
#include "creg/sweep.hpp"
