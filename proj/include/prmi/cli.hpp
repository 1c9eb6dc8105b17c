#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace prmi::cli {

enum class Mode { quantum, classical };

struct RunSpec {
    Mode mode = Mode::quantum;
    std::vector<double> alpha_list;
    double eps0 = 1e-6;
    std::string input_path;
    /// "marginal", "uniform" or "file:PATH".
    std::string init = "marginal";
    /// Trace destination; with several orders, "_alpha<value>" is inserted
    /// before the extension of each file.
    std::string trace_path = "trace.json";
    bool record_states = false;
    std::size_t max_iter = 100000;
    bool uncertified = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNotCertified = 3;

/// Trace file name for one order of a sweep.
std::filesystem::path trace_path_for(const RunSpec& spec, double alpha);

/// Runs every order of the spec in sequence. Prints one summary line per order
/// to `out` and diagnostics to `err`. Returns 0 when every run terminated by
/// its certificate, 2 on invalid input, 3 otherwise.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// Parses command-line arguments and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace prmi::cli
