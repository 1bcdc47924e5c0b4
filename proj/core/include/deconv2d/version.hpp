#ifndef DECONV2D_VERSION_HPP
#define DECONV2D_VERSION_HPP

namespace deconv2d {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace deconv2d

#endif
