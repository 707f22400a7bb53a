#ifndef PLCERF_VERSION_HPP
#define PLCERF_VERSION_HPP

namespace plcerf {

inline constexpr const char* kVersion = "0.1.0";

} // namespace plcerf

#endif
