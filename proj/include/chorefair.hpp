#pragma once

#include "chorefair/allocation.hpp"
#include "chorefair/cost_function.hpp"
#include "chorefair/enumeration.hpp"
#include "chorefair/envy_graph.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/fairness.hpp"
#include "chorefair/function_class.hpp"
#include "chorefair/generators.hpp"
#include "chorefair/instance.hpp"
#include "chorefair/item_set.hpp"
#include "chorefair/json_io.hpp"
#include "chorefair/oracle.hpp"
#include "chorefair/random.hpp"
#include "chorefair/solve_report.hpp"
#include "chorefair/solver_additive.hpp"
#include "chorefair/solver_cancelable.hpp"
#include "chorefair/solver_general.hpp"
#include "chorefair/solver_submodular.hpp"
