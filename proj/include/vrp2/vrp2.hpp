#pragma once

#include "vrp2/cost.hpp"
#include "vrp2/model.hpp"
#include "vrp2/dp.hpp"
#include "vrp2/oracle.hpp"
#include "vrp2/aggregation.hpp"
#include "vrp2/sliding_search.hpp"
#include "vrp2/tour_improvement.hpp"
#include "vrp2/two_period.hpp"
#include "vrp2/harness/generator.hpp"
#include "vrp2/harness/instance_io.hpp"
#include "vrp2/harness/multistart.hpp"
#include "vrp2/harness/report.hpp"
