#pragma once

#include "eomsim/calendar.hpp"
#include "eomsim/core/costs.hpp"
#include "eomsim/core/errors.hpp"
#include "eomsim/core/types.hpp"
#include "eomsim/core/validation.hpp"
#include "eomsim/diagnostics.hpp"
#include "eomsim/dispatch.hpp"
#include "eomsim/energy_market.hpp"
#include "eomsim/engine.hpp"
#include "eomsim/feasibility.hpp"
#include "eomsim/forecast.hpp"
#include "eomsim/heat_market.hpp"
#include "eomsim/report.hpp"
#include "eomsim/reserve_market.hpp"
#include "eomsim/scenario.hpp"
