#pragma once

// Convenience umbrella: pulls in the whole library.

#include "monotest/budgets.hpp"
#include "monotest/common.hpp"
#include "monotest/config.hpp"
#include "monotest/distance.hpp"
#include "monotest/harness.hpp"
#include "monotest/instances.hpp"
#include "monotest/lp.hpp"
#include "monotest/oracle.hpp"
#include "monotest/partition.hpp"
#include "monotest/pmf.hpp"
#include "monotest/rng.hpp"
#include "monotest/subroutines.hpp"
#include "monotest/testers.hpp"
