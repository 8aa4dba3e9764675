#pragma once

#include "coherent.hpp"
#include "quadrature.hpp"
#include "rotation.hpp"
#include "special_functions.hpp"
#include "spectral.hpp"
#include "verify.hpp"
#include "well.hpp"
