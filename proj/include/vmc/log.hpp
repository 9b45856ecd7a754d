#pragma once

#include <spdlog/spdlog.h>

namespace vmc {

// Reads VMC_LOG (error|info|debug) once and configures the default logger
// to write to stderr. Unset or unknown values fall back to "error".
void init_logging();

}  // namespace vmc
