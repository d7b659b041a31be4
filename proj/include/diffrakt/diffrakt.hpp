// Umbrella header for the diffrakt library.

#ifndef DIFFRAKT_DIFFRAKT_HPP_
#define DIFFRAKT_DIFFRAKT_HPP_

#include "error.hpp"
#include "turn.hpp"
#include "abelian.hpp"
#include "density.hpp"
#include "lattice.hpp"
#include "relators.hpp"
#include "phaseforms.hpp"
#include "process.hpp"
#include "inverse.hpp"

#endif
