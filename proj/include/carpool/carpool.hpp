#pragma once

// Umbrella header.
#include "carpool/arrivals.hpp"
#include "carpool/composed.hpp"
#include "carpool/conductance.hpp"
#include "carpool/decomposition.hpp"
#include "carpool/drift.hpp"
#include "carpool/edge_list.hpp"
#include "carpool/experiment.hpp"
#include "carpool/generators.hpp"
#include "carpool/graph.hpp"
#include "carpool/offline.hpp"
#include "carpool/orientation.hpp"
#include "carpool/prefix_check.hpp"
#include "carpool/rng.hpp"
