#pragma once

#include "multiplier/block.hpp"
#include "multiplier/kpv.hpp"
#include "multiplier/resonance.hpp"
