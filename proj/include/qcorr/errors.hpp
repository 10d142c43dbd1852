#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Precondition / invariant violations on inputs (non-Hermitian matrix,
// dimension mismatch, unknown name, parameter out of range).
struct contract_error : std::invalid_argument {
    explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

// Conditioning on an outcome whose marginal probability is (numerically) zero.
struct undefined_conditional : std::domain_error {
    explicit undefined_conditional(const std::string& what) : std::domain_error(what) {}
};

// Pearson coefficient requested for an observable with vanishing variance.
struct degenerate_observable : std::domain_error {
    explicit degenerate_observable(const std::string& what) : std::domain_error(what) {}
};

}  // namespace qcorr
