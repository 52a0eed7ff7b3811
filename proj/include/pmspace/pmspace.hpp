#pragma once

// Umbrella header for the core library. File formats and the command line
// front end live in io.hpp and cli.hpp and are not pulled in here.

#include "chart.hpp"
#include "densify.hpp"
#include "distance_matrix.hpp"
#include "errors.hpp"
#include "extend.hpp"
#include "family.hpp"
#include "validation.hpp"
