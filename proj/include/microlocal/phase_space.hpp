#pragma once

#include "phase_space/characteristic.hpp"
#include "phase_space/flow.hpp"
#include "phase_space/point.hpp"
#include "phase_space/radial.hpp"
#include "phase_space/symbol.hpp"
