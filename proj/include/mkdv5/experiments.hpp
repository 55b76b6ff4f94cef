#pragma once

#include "experiments/approximation.hpp"
#include "experiments/common.hpp"
#include "experiments/config.hpp"
#include "experiments/counterexample.hpp"
#include "experiments/illposedness.hpp"
#include "experiments/report.hpp"
#include "experiments/resonance_scan.hpp"
#include "experiments/suite.hpp"
