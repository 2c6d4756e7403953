#ifndef ORDTEST_ERRORS_HPP
#define ORDTEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ordtest {

// Error taxonomy used across all modules:
//   parameter_error  - malformed or out-of-range arguments
//   capacity_error   - exact mode asked for an instance above its cap
//   capability_error - a required optional capability (oracle, sampler) is missing
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parameter_error : error {
    using error::error;
};

struct capacity_error : error {
    using error::error;
};

struct capability_error : error {
    using error::error;
};

} // namespace ordtest

#endif
