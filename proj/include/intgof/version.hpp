#ifndef INTGOF_VERSION_HPP
#define INTGOF_VERSION_HPP

namespace intgof {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

} // namespace intgof

#endif
