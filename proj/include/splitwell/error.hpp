#pragma once

#include <stdexcept>
#include <string>

namespace splitwell {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Anything a solver can raise. The CLI maps this family to exit code 2.
struct SolverError : Error { using Error::Error; };

struct NoSignChange : SolverError { using SolverError::SolverError; };
struct NoConvergence : SolverError { using SolverError::SolverError; };
struct DomainError : SolverError { using SolverError::SolverError; };
struct InvalidGeometry : SolverError { using SolverError::SolverError; };
struct GridTooSmall : SolverError { using SolverError::SolverError; };
struct InconsistentFlags : SolverError { using SolverError::SolverError; };
struct EmptyInput : SolverError { using SolverError::SolverError; };
struct WrongLimit : SolverError { using SolverError::SolverError; };
struct BasisTooSmall : SolverError { using SolverError::SolverError; };
struct RootPairingFailure : SolverError { using SolverError::SolverError; };
struct NotSymmetryEigenstate : SolverError { using SolverError::SolverError; };
struct CrossingDetected : SolverError { using SolverError::SolverError; };
struct AttachmentFailure : SolverError { using SolverError::SolverError; };
struct MalformedExpression : SolverError { using SolverError::SolverError; };
struct UnsupportedFormat : SolverError { using SolverError::SolverError; };

// Bad input files; exit code 1.
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace splitwell
