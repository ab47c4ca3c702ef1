#pragma once

namespace incseq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace incseq
