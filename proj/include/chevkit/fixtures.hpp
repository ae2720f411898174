#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chevkit/matrix.hpp"

namespace chevkit {

struct UnknownFixture : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Diagonal +-1 matrix d with d T d = F, found by propagating signs along the
// nonzero pattern. Empty if none exists.
std::optional<std::vector<int>> sign_gauge(const Matrix& toolkit, const Matrix& fixture);

struct FixtureReport {
    std::string id, kind, source;
    bool pass = false;
    std::vector<int> gauge;  // +-1 per basis vector
    std::string detail;
    json to_json() const;
};

std::vector<std::string> fixture_ids();
FixtureReport compare_fixture(const std::string& id);

}  // namespace chevkit
