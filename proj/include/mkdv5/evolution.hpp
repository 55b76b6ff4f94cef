#pragma once

#include "evolution/coeffs.hpp"
#include "evolution/conserved.hpp"
#include "evolution/solvers.hpp"
#include "evolution/stepper.hpp"
#include "evolution/trajectory.hpp"
