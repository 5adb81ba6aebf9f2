#pragma once

#include "ecoidx/community.hpp"
#include "ecoidx/error.hpp"
#include "ecoidx/evaluation.hpp"
#include "ecoidx/formulas.hpp"
#include "ecoidx/graph.hpp"
#include "ecoidx/io.hpp"
#include "ecoidx/metrics.hpp"
#include "ecoidx/report.hpp"
#include "ecoidx/synthgen.hpp"
