#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fractile/geometry.hpp"

namespace fractile {

enum class Status { Holds, Violated, Inconclusive };

const char* to_string(Status s);

struct Witness {
    Vec2 point;
    double distance = 0.0;
};

// Outcome of a decision procedure. `margin` is the measured quantity the decision
// was based on (an overlap measure, a distance, a volume difference).
struct Verdict {
    Status status = Status::Inconclusive;
    std::string reason;
    double tolerance = 0.0;
    double margin = 0.0;
    int depth = 0;
    std::vector<int> indices;  // 1-based map indices involved (a failing pair, say)
    std::optional<Witness> witness;

    bool holds() const { return status == Status::Holds; }
    bool violated() const { return status == Status::Violated; }
    bool decided() const { return status != Status::Inconclusive; }
};

// Violated if any part is violated, holds if all hold, otherwise inconclusive.
Verdict combine(const std::vector<Verdict>& parts, std::string reason);

}  // namespace fractile
