#ifndef HLIM_HARNESS_HPP
#define HLIM_HARNESS_HPP

#include "hlim/harness/config.hpp"
#include "hlim/harness/io.hpp"
#include "hlim/harness/kinetic_run.hpp"
#include "hlim/harness/scaling.hpp"
#include "hlim/harness/sweep.hpp"

#endif
