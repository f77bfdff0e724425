#pragma once

#include "model1d/airy_solution.hpp"
#include "model1d/fourier_grid.hpp"
#include "model1d/model.hpp"
