#pragma once

#define MULTINET_VERSION "0.1.0"

namespace multinet {

inline const char* version() { return MULTINET_VERSION; }

}  // namespace multinet
