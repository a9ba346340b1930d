#include "bevcurve/error.hpp"

namespace bevcurve {

std::string_view to_string(ErrorKind kind) {
	switch (kind) {
	case ErrorKind::EmptySeries: return "EmptySeries";
	case ErrorKind::SpliceOverlap: return "SpliceOverlap";
	case ErrorKind::FrequencyMismatch: return "FrequencyMismatch";
	case ErrorKind::NoOverlap: return "NoOverlap";
	case ErrorKind::EmptyWindow: return "EmptyWindow";
	case ErrorKind::InvalidSeries: return "InvalidSeries";
	case ErrorKind::SchemaError: return "SchemaError";
	case ErrorKind::ParseError: return "ParseError";
	case ErrorKind::UnitAmbiguity: return "UnitAmbiguity";
	case ErrorKind::DivisionByZero: return "DivisionByZero";
	case ErrorKind::MissingRole: return "MissingRole";
	case ErrorKind::IoError: return "IoError";
	case ErrorKind::DomainError: return "DomainError";
	case ErrorKind::SingularFit: return "SingularFit";
	case ErrorKind::InfeasiblePartition: return "InfeasiblePartition";
	case ErrorKind::IntegrationError: return "IntegrationError";
	case ErrorKind::UsageError: return "UsageError";
	}
	return "Unknown";
}

} // namespace bevcurve
