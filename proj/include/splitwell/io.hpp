#pragma once

#include "splitwell/io/config.hpp"
#include "splitwell/io/run.hpp"
#include "splitwell/io/serialize.hpp"
#include "splitwell/io/svg.hpp"
