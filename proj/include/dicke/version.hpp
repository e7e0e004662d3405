#ifndef DICKE_VERSION_HPP
#define DICKE_VERSION_HPP

namespace dicke {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dicke

#endif
