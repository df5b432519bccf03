// errors.hpp — Exception types for contract violations and numerical failure modes

#pragma once

#include <stdexcept>
#include <string>

namespace wellgrade {

struct InvalidDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// M_kappa has a (near-)zero diagonal entry and cannot be inverted.
struct NonInvertibleM : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfRange : std::domain_error {
    using std::domain_error::domain_error;
};

// Fewer localized eigenstates than the state construction requires.
struct WellClassificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Overlap-based frame matching could not decide between two columns.
struct GaugeAmbiguity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A level pair is degenerate below gap_floor while coupled by H_dot; the
// counter-diabatic term is ill-defined there.
struct DegenerateGap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PositivityLoss : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonMonotoneTime : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NegativeEigenvalue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wellgrade
