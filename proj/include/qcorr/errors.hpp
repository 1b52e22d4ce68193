#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Base class for all qcorr errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Input fails a structural invariant (not a distribution, not a density
// matrix, mismatched shapes, malformed file content).
class validation_error : public error {
public:
    explicit validation_error(const std::string& what) : error(what) {}
};

// Argument lies outside the operation's domain.
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

// Parameters describe no physical state (negative eigenvalues beyond
// tolerance).
class unphysical_error : public error {
public:
    explicit unphysical_error(const std::string& what) : error(what) {}
};

// Two internal computation routes disagree; indicates a bug, not bad input.
class consistency_error : public error {
public:
    explicit consistency_error(const std::string& what) : error(what) {}
};

// File could not be read or written.
class io_error : public error {
public:
    explicit io_error(const std::string& what) : error(what) {}
};

} // namespace qcorr
