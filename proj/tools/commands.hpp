#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fractile::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInconclusive = 2;
constexpr int kRefused = 3;  // trivial or incompatible input, or disagreeing tube methods

struct Options {
    std::string spec;
    double tol = 1e-9;
    int depth = -1;  // -1: command default
    double min_diam = 0.0;
    double eps_min = 1e-3;
    double eps_max = 0.3;
    int eps_n = 20;
    std::vector<std::string> methods{"scaling_sum", "grid"};
    double im_max = 10.0;
    std::string out;
    std::string format;  // svg | geo | csv | report; empty picks the command default
};

int cmd_check(const Options& o, std::ostream& out, std::ostream& err);
int cmd_tile(const Options& o, std::ostream& out, std::ostream& err);
int cmd_tube(const Options& o, std::ostream& out, std::ostream& err);
int cmd_dims(const Options& o, std::ostream& out, std::ostream& err);
int cmd_envelope(const Options& o, std::ostream& out, std::ostream& err);

// Dispatches by name and maps library errors to exit codes.
int run(const std::string& command, const Options& o, std::ostream& out, std::ostream& err);

}  // namespace fractile::cli
