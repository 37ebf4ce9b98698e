#pragma once

#include <string>
#include <vector>

namespace aitlab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_undefined = 2;
inline constexpr int exit_usage = 64;

struct Outcome {
    int code = exit_ok;
    std::string out;
    std::string err;
};

// Runs one command line (without the program name) and captures its output.
Outcome run(const std::vector<std::string>& args);

// Entry point for the aitlab executable: prints and returns the exit code.
int dispatch(int argc, char** argv);

}  // namespace aitlab::cli
