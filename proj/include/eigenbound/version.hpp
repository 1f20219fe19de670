#ifndef EIGENBOUND_VERSION_HPP
#define EIGENBOUND_VERSION_HPP

namespace eigenbound {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
