#pragma once

// Complete isometry invariants of finite unlabeled point clouds and exact
// polynomial-time metrics between them: principal-coordinates invariants for
// principally generic clouds, weighted matrices invariants for all clouds,
// and the symmetrized bottleneck / linear assignment / nested earth mover's
// metrics on top of them.

#include "isoclouds/bottleneck.hpp"
#include "isoclouds/errors.hpp"
#include "isoclouds/io.hpp"
#include "isoclouds/matrix.hpp"
#include "isoclouds/metrics.hpp"
#include "isoclouds/oracle.hpp"
#include "isoclouds/pci.hpp"
#include "isoclouds/point_cloud.hpp"
#include "isoclouds/rational.hpp"
#include "isoclouds/spectrum.hpp"
#include "isoclouds/wmi.hpp"
