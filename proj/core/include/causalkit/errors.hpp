#ifndef CAUSALKIT_ERRORS_HPP
#define CAUSALKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace causal {

// Base class for all domain errors raised by this library. The CLI maps
// these to exit code 1; anything escaping that is a usage or internal bug.
class CausalError : public std::runtime_error {
public:
    explicit CausalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Graph-shape violations: cycles where a DAG is required, unknown nodes,
// duplicate names, conflicting edge forms.
class StructuralError : public CausalError {
public:
    using CausalError::CausalError;
};

// Linear-algebra failures that survive regularization (singular matrices).
class NumericalError : public CausalError {
public:
    using CausalError::CausalError;
};

// Data unfit for the requested statistic: constant columns, too few rows.
class DegenerateDataError : public CausalError {
public:
    using CausalError::CausalError;
};

// Malformed input text: graph files, CSV, LLM responses, bench configs.
class ParseError : public CausalError {
public:
    using CausalError::CausalError;
};

class IoError : public CausalError {
public:
    using CausalError::CausalError;
};

// Offline mode asked for a prompt that has no recorded response.
class CacheMissError : public CausalError {
public:
    explicit CacheMissError(const std::string& msg, std::string key)
        : CausalError(msg), cache_key(std::move(key)) {}
    std::string cache_key;
};

// HTTP-level failure after retries were exhausted.
class TransportError : public CausalError {
public:
    using CausalError::CausalError;
};

}  // namespace causal

#endif
