#pragma once

#include "gsp4/errors.hpp"
#include "gsp4/irregularity.hpp"
#include "gsp4/modarith.hpp"
#include "gsp4/pairsearch.hpp"
#include "gsp4/sampling.hpp"
#include "gsp4/symplectic.hpp"
