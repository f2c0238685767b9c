#pragma once

#include <stdexcept>

namespace idplab {

// Observation window: orbit indices 0..length-1 and the jump threshold.
// The window-hit set A(w) of a base system collects the points whose
// observable orbit exceeds the threshold somewhere in the window; every
// shipped family guarantees that A(w) has finite mass.
struct WindowSpec {
    int length = 1;
    double threshold = 0.5;

    void validate() const {
        if (length < 1) throw std::invalid_argument("window length must be >= 1");
        if (!(threshold > 0.0)) throw std::invalid_argument("window threshold must be > 0");
    }
};

inline bool operator==(const WindowSpec& a, const WindowSpec& b) {
    return a.length == b.length && a.threshold == b.threshold;
}

}  // namespace idplab
