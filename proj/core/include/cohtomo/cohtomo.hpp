#pragma once

// Umbrella header pulling in the whole public API.

#include "cohtomo/document.hpp"
#include "cohtomo/errors.hpp"
#include "cohtomo/expansion.hpp"
#include "cohtomo/fock.hpp"
#include "cohtomo/gadget.hpp"
#include "cohtomo/math.hpp"
#include "cohtomo/recipe.hpp"
#include "cohtomo/sampler.hpp"
#include "cohtomo/tomography.hpp"
