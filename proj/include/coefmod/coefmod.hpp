#pragma once

/// @file coefmod.hpp
/// Umbrella header for the coefficient-module library.

#include "coefmod/coefficient.hpp"
#include "coefmod/error.hpp"
#include "coefmod/field.hpp"
#include "coefmod/graded.hpp"
#include "coefmod/hilbert_fit.hpp"
#include "coefmod/lp.hpp"
#include "coefmod/matrix.hpp"
#include "coefmod/module_ops.hpp"
#include "coefmod/monomial.hpp"
#include "coefmod/monomial_ideal.hpp"
#include "coefmod/monomial_module.hpp"
#include "coefmod/newton.hpp"
#include "coefmod/poly.hpp"
#include "coefmod/presentation.hpp"
#include "coefmod/spec_file.hpp"
