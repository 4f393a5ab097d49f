#pragma once

// Internal entry points shared with the tests.

#include "fgl/fgl_core.hpp"

namespace fgl::detail {

// Reference construction through exact rational series; slow, used as an
// oracle for universal_deformation.
FormalGroupLaw universal_deformation_rational(const RingDescriptor& desc, int trunc_t);

}  // namespace fgl::detail
