#pragma once

#include <stdexcept>
#include <string>

namespace equirr {

/* Malformed input: bad scenario, precondition of a public operation
 * violated by the caller, dimension mismatch. */
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/* A randomized search or closure ran past its configured cap. */
class cap_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* Something that the mathematics guarantees did not happen
 * (non-integral class, missing complement, failed certificate). */
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace equirr
