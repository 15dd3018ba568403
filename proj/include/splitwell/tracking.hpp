#pragma once

#include "splitwell/tracking/adiabatic.hpp"
#include "splitwell/tracking/sweep.hpp"
