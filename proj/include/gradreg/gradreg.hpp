#pragma once

// Umbrella header.

#include "gradreg/errors.hpp"
#include "gradreg/field.hpp"
#include "gradreg/freealg.hpp"
#include "gradreg/freemod.hpp"
#include "gradreg/gbasis.hpp"
#include "gradreg/io.hpp"
#include "gradreg/modpres.hpp"
#include "gradreg/regularity.hpp"
#include "gradreg/resolution.hpp"
#include "gradreg/sparse.hpp"
#include "gradreg/verify.hpp"

namespace gradreg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gradreg
