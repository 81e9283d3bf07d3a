#pragma once

#include "irg/branching.hpp"
#include "irg/config_io.hpp"
#include "irg/fixed_point.hpp"
#include "irg/graph.hpp"
#include "irg/harness.hpp"
#include "irg/kernel.hpp"
#include "irg/measure_transform.hpp"
#include "irg/operator_stats.hpp"
#include "irg/type_space.hpp"
