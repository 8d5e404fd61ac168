#ifndef HLIM_PROFILES_HPP
#define HLIM_PROFILES_HPP

#include "hlim/profiles/contact.hpp"
#include "hlim/profiles/coordinates.hpp"
#include "hlim/profiles/field.hpp"
#include "hlim/profiles/hyperbolic_wave.hpp"
#include "hlim/profiles/rarefaction.hpp"
#include "hlim/profiles/shock.hpp"
#include "hlim/profiles/superpose.hpp"

#endif
