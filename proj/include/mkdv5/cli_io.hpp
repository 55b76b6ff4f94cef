#pragma once

#include "cli_io/config_io.hpp"
#include "cli_io/exit_codes.hpp"
#include "cli_io/report_io.hpp"
