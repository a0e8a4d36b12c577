#pragma once

namespace seglab {

inline constexpr const char* kToolName = "seglab";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchemaVersion = "1.0";

} // namespace seglab
