// polariton.hpp - umbrella header.

#pragma once

#include "polariton/bath.hpp"
#include "polariton/bundled.hpp"
#include "polariton/core.hpp"
#include "polariton/io.hpp"
#include "polariton/linalg.hpp"
#include "polariton/solution.hpp"
#include "polariton/solver_quadratic.hpp"
#include "polariton/solver_rwa.hpp"
#include "polariton/spectrum.hpp"
#include "polariton/synthetic.hpp"
