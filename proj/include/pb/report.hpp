#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pb/series.hpp"

namespace pb {

// Outcome of one verifier run. Exact checks pass iff residuals is empty;
// numeric checks fill `metrics` and compare against stated tolerances.
struct Report {
    std::string check;
    std::map<std::string, std::string> params;
    Rational order{0};
    bool ok = true;
    std::vector<std::pair<Rational, ExactScalar>> residuals;
    std::map<std::string, double> metrics;
    double seconds = 0;

    void note_residuals(const GradedSeries& diff);
    void note_residuals(const ExponentKeyedSum& diff);
};

}  // namespace pb
