#pragma once

#include "swipt/config.hpp"
#include "swipt/csv.hpp"
#include "swipt/errors.hpp"
#include "swipt/fading.hpp"
#include "swipt/linalg.hpp"
#include "swipt/omp.hpp"
#include "swipt/psa.hpp"
#include "swipt/relay.hpp"
#include "swipt/scheme.hpp"
#include "swipt/simulation.hpp"
#include "swipt/topology.hpp"
#include "swipt/validate.hpp"
