#pragma once

#include "annealer.hpp"
#include "cover.hpp"
#include "dsu.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "fixed_edge_queue.hpp"
#include "instances.hpp"
#include "matching.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "tour.hpp"
#include "union_graph.hpp"
