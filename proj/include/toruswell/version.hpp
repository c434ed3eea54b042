#pragma once

namespace toruswell {

inline constexpr const char* kToolName = "toruswell";
inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kReportFormatVersion = "1";

}  // namespace toruswell
