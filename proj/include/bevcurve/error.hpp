#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bevcurve {

enum class ErrorKind {
	EmptySeries,
	SpliceOverlap,
	FrequencyMismatch,
	NoOverlap,
	EmptyWindow,
	InvalidSeries,
	SchemaError,
	ParseError,
	UnitAmbiguity,
	DivisionByZero,
	MissingRole,
	IoError,
	DomainError,
	SingularFit,
	InfeasiblePartition,
	IntegrationError,
	UsageError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
	Error(ErrorKind kind, const std::string &message)
		: std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

	ErrorKind kind() const noexcept { return kind_; }

private:
	ErrorKind kind_;
};

} // namespace bevcurve
