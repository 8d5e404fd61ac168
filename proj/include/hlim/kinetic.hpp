#ifndef HLIM_KINETIC_HPP
#define HLIM_KINETIC_HPP

#include "hlim/kinetic/initial.hpp"
#include "hlim/kinetic/macro_micro.hpp"
#include "hlim/kinetic/solver.hpp"
#include "hlim/kinetic/velocity_grid.hpp"

#endif
