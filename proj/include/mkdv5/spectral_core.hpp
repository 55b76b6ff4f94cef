#pragma once

#include "spectral_core/cutoff.hpp"
#include "spectral_core/fft.hpp"
#include "spectral_core/field.hpp"
#include "spectral_core/grid.hpp"
#include "spectral_core/norms.hpp"
#include "spectral_core/spectral.hpp"
