#pragma once

#include "lightpath/errors.hpp"
#include "lightpath/graph.hpp"
#include "lightpath/labeling.hpp"
#include "lightpath/physics.hpp"
#include "lightpath/serialize.hpp"
#include "lightpath/simulate.hpp"
