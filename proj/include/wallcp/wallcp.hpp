// Umbrella header.
#pragma once

#include "wallcp/casimir.hpp"
#include "wallcp/fields.hpp"
#include "wallcp/geometry.hpp"
#include "wallcp/linalg.hpp"
#include "wallcp/modesum.hpp"
#include "wallcp/numdiff.hpp"
#include "wallcp/quadrature.hpp"
#include "wallcp/response.hpp"
#include "wallcp/units.hpp"
