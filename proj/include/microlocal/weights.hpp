#pragma once

#include "weights/cutoff.hpp"
#include "weights/q_eps.hpp"
#include "weights/verify.hpp"
#include "weights/weight.hpp"
