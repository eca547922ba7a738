#pragma once

#include <stdexcept>
#include <string>

namespace septree {

/// A precondition of an operation was violated (arity mismatch, bad index).
class ContractError : public std::logic_error {
public:
	using std::logic_error::logic_error;
};

/// A task lacks a capability an operation requires (subtraction, worsening).
class CapabilityError : public std::logic_error {
public:
	using std::logic_error::logic_error;
};

/// Input data failed validation.
class DataError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

} // namespace septree
