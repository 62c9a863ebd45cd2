#pragma once

#include <vector>

#include "oracles.hpp"
#include "swarmform/geometry.hpp"

namespace testing_support {

inline swarmform::SwarmState to_state(const std::vector<oracle::P>& pts) {
    std::vector<swarmform::Vec2> v;
    v.reserve(pts.size());
    for (const auto& p : pts) {
        v.push_back({p.x, p.y});
    }
    return swarmform::SwarmState(std::move(v));
}

}  // namespace testing_support
