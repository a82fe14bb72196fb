#pragma once

#include <stdexcept>

namespace cranklab {

// A table or enumeration request exceeded the configured cap.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A kernel denominator sin(pi*a*h'/c) vanished: the sum is undefined at the
// requested arguments and must not be silently skipped.
struct singularity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A surviving second-sum term produced a non-integer Fourier index m.
struct integrality_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A cross-check that should hold by construction failed (non-constant
// cyclotomic remainder, imaginary residue above tolerance, ...).
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cranklab
