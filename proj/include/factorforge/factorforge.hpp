#pragma once

#include "factorforge/alternating.hpp"
#include "factorforge/blowup.hpp"
#include "factorforge/errors.hpp"
#include "factorforge/factor.hpp"
#include "factorforge/generators.hpp"
#include "factorforge/gf2.hpp"
#include "factorforge/graph.hpp"
#include "factorforge/io.hpp"
#include "factorforge/matching.hpp"
#include "factorforge/oracle.hpp"
#include "factorforge/partition_connector.hpp"
#include "factorforge/randomized_pc.hpp"
#include "factorforge/solver.hpp"
#include "factorforge/tutte.hpp"
#include "factorforge/union_find.hpp"
