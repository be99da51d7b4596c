#ifndef GGSUM_VERSION_HPP
#define GGSUM_VERSION_HPP

namespace ggsum {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
