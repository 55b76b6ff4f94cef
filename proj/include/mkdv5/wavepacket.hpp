#pragma once

#include "wavepacket/modulation.hpp"
#include "wavepacket/packet.hpp"
#include "wavepacket/params.hpp"
#include "wavepacket/rescale.hpp"
#include "wavepacket/residual.hpp"
