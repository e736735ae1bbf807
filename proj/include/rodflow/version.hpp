#ifndef RODFLOW_VERSION_HPP
#define RODFLOW_VERSION_HPP

namespace rodflow {

inline constexpr const char* artifact_version = "0.1.0";

} // namespace rodflow

#endif
