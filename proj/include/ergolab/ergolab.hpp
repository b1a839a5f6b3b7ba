#pragma once

// Umbrella header for the whole library.

#include "numeric.hpp"
#include "semigroup.hpp"
#include "groups.hpp"
#include "state.hpp"
#include "base_system.hpp"
#include "cocycle.hpp"
#include "representation.hpp"
#include "observable.hpp"
#include "systems.hpp"
#include "koopman.hpp"
#include "twisted.hpp"
#include "skew.hpp"
#include "oracle.hpp"
#include "csv.hpp"
#include "config.hpp"
#include "runner.hpp"
