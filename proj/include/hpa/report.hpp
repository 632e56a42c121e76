#pragma once

#include <string>
#include <vector>

namespace hpa {

/// Outcome of a verifier: passed, or failed with human-readable witnesses.
struct CheckReport {
    bool passed = true;
    std::vector<std::string> witnesses;

    void fail(std::string witness) {
        passed = false;
        witnesses.push_back(std::move(witness));
    }
};

}  // namespace hpa
