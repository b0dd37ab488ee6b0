#pragma once

#include "ptlattice/bound.hpp"
#include "ptlattice/errors.hpp"
#include "ptlattice/exceptional.hpp"
#include "ptlattice/model.hpp"
#include "ptlattice/polyroot.hpp"
#include "ptlattice/ptscatter.hpp"
#include "ptlattice/scattering.hpp"
#include "ptlattice/spectrum.hpp"
