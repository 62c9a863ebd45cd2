#pragma once

#include <stdexcept>
#include <string>

namespace swarmform {

/// Caller violated a documented precondition (bad agent id, bad bounds).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Geometry is undefined for the input (zero-length vector, non-positive distance).
class DegenerateGeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A scenario cannot proceed (all agents removed, non-finite state).
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace swarmform
