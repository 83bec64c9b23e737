#pragma once

#include <stdexcept>

namespace qpesim {

struct ParseError : std::runtime_error { using std::runtime_error::runtime_error; };
struct IndexError : std::runtime_error { using std::runtime_error::runtime_error; };
struct ConsistencyError : std::runtime_error { using std::runtime_error::runtime_error; };
struct CapacityError : std::runtime_error { using std::runtime_error::runtime_error; };
struct RotationError : std::runtime_error { using std::runtime_error::runtime_error; };
struct SymmetryError : std::runtime_error { using std::runtime_error::runtime_error; };
struct IdentityRotationError : std::runtime_error { using std::runtime_error::runtime_error; };
struct OverlapError : std::runtime_error { using std::runtime_error::runtime_error; };
struct DegeneracyError : std::runtime_error { using std::runtime_error::runtime_error; };
struct FitError : std::runtime_error { using std::runtime_error::runtime_error; };
struct NoPeakError : std::runtime_error { using std::runtime_error::runtime_error; };
struct HermiticityError : std::runtime_error { using std::runtime_error::runtime_error; };
struct SectorError : std::runtime_error { using std::runtime_error::runtime_error; };
struct PairingError : std::runtime_error { using std::runtime_error::runtime_error; };

}  // namespace qpesim
