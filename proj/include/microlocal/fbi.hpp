#pragma once

#include "fbi/csv.hpp"
#include "fbi/inverse.hpp"
#include "fbi/params.hpp"
#include "fbi/phase.hpp"
#include "fbi/transform.hpp"
