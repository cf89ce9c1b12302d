#pragma once

// Umbrella header.

#include "hnnd/assignment.hpp"
#include "hnnd/clustering.hpp"
#include "hnnd/dataset.hpp"
#include "hnnd/delaunay.hpp"
#include "hnnd/descent.hpp"
#include "hnnd/errors.hpp"
#include "hnnd/kd_tree.hpp"
#include "hnnd/metric.hpp"
#include "hnnd/mst.hpp"
#include "hnnd/neighbor_graph.hpp"
#include "hnnd/pipeline.hpp"
#include "hnnd/potential.hpp"
#include "hnnd/predicates.hpp"
#include "hnnd/render.hpp"
