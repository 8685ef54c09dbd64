#pragma once

#include "errors.hpp"
#include "potentials.hpp"
#include "literal.hpp"
#include "hypergeometric.hpp"
#include "quadrature.hpp"
#include "tortoise_map.hpp"
#include "radial_solver.hpp"
#include "phase_shift.hpp"
#include "duality.hpp"
#include "reference_solutions.hpp"
#include "validation.hpp"
