#ifndef MOPG_ERRORS_HPP
#define MOPG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mopg {

// Thrown when a caller violates a documented precondition.
struct ContractViolation : std::invalid_argument {
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a full enumeration would exceed the configured cardinality cap.
struct CapExceeded : std::runtime_error {
    CapExceeded(const std::string& what, unsigned long long cardinality)
        : std::runtime_error(what), cardinality(cardinality) {}
    unsigned long long cardinality;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ContractViolation(msg);
}

} // namespace mopg

#endif
