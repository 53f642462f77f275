#pragma once

// Umbrella header: binary quadratic forms over Z and Z/n, the correspondence
// with quadratic algebras and traceable modules, composition and class groups
// through ideal lattices, and the exhaustive finite-ring verifier.

#include "algebra.hpp"
#include "census.hpp"
#include "correspondence.hpp"
#include "equivalence.hpp"
#include "errors.hpp"
#include "form.hpp"
#include "ideal.hpp"
#include "json_io.hpp"
#include "mat2.hpp"
#include "module_iso.hpp"
#include "numeric.hpp"
#include "ring.hpp"
