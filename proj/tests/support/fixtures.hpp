#pragma once

#include <string>

#include "hflmc/hes.hpp"
#include "hflmc/lts.hpp"

namespace fixtures {

inline constexpr const char* kEx3Hes =
    "S =v <a> F (<b> S);\n"
    "F =m \\X. X \\/ <c> S \\/ <a> F (<b> X);\n";

inline constexpr const char* kFig3Lts =
    "initial q0\n"
    "q0 a q1\n"
    "q1 b q2\n"
    "q2 a q0\n"
    "q0 c q0\n";

inline constexpr const char* kEx2Hes =
    "S =v F (<end> true);\n"
    "F =v \\k. <close> k /\\ <read> <read> F k;\n";

inline constexpr const char* kL2Lts =
    "initial q0\n"
    "q0 read q0\n"
    "q0 close q1\n"
    "q1 end q2\n";

/// parse_hes followed by infer_kinds.
hflmc::Hes load_hes(const std::string& text);
hflmc::Lts load_lts(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace fixtures
