#pragma once

#include "wfa/detect.hpp"
#include "wfa/report.hpp"
