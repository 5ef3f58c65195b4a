#ifndef STREAMLAT_VERSION_HPP
#define STREAMLAT_VERSION_HPP

namespace streamlat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace streamlat

#endif  // STREAMLAT_VERSION_HPP
