// SPDX-License-Identifier: MIT
//
// Convenience header pulling in the whole library.

#pragma once

#include "qball/berezin.hpp"
#include "qball/bergman.hpp"
#include "qball/context.hpp"
#include "qball/fock.hpp"
#include "qball/io.hpp"
#include "qball/laplacian.hpp"
#include "qball/lattice.hpp"
#include "qball/orthopoly.hpp"
#include "qball/qseries.hpp"
#include "qball/spherical.hpp"
#include "qball/verify.hpp"
