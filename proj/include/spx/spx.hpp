#pragma once

#include "spx/arith.hpp"
#include "spx/linalg.hpp"
#include "spx/presentation.hpp"
#include "spx/spchain.hpp"
#include "spx/homology.hpp"
#include "spx/diagonal.hpp"
#include "spx/cohomring.hpp"
#include "spx/ring_checks.hpp"
