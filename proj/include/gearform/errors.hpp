#pragma once

#include <stdexcept>
#include <string>

namespace gearform {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GEARFORM_DEFINE_ERROR(Name)         \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

// geometry kernel
GEARFORM_DEFINE_ERROR(GeometryMismatch);
GEARFORM_DEFINE_ERROR(DomainError);
GEARFORM_DEFINE_ERROR(DegenerateAngle);
GEARFORM_DEFINE_ERROR(AntipodalError);
GEARFORM_DEFINE_ERROR(NoTangentExists);

// kinematics
GEARFORM_DEFINE_ERROR(UndefinedAtZero);
GEARFORM_DEFINE_ERROR(InsufficientData);

// drivetrain
GEARFORM_DEFINE_ERROR(InvalidGraph);
GEARFORM_DEFINE_ERROR(InconsistentCycle);
GEARFORM_DEFINE_ERROR(DisconnectedComponent);
GEARFORM_DEFINE_ERROR(MeshInvalid);
GEARFORM_DEFINE_ERROR(NoPath);
GEARFORM_DEFINE_ERROR(InvalidStep);

// scene files and rendering
GEARFORM_DEFINE_ERROR(SchemaError);
GEARFORM_DEFINE_ERROR(ReferenceError);
GEARFORM_DEFINE_ERROR(MissingCenters);
GEARFORM_DEFINE_ERROR(OverlappingCircles);

#undef GEARFORM_DEFINE_ERROR

}  // namespace gearform
