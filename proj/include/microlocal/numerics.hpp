#pragma once

#include "numerics/airy.hpp"
#include "numerics/decay_fit.hpp"
#include "numerics/errors.hpp"
#include "numerics/moments.hpp"
#include "numerics/quadrature.hpp"
