#pragma once

#include "frac/analytic_oracle.hpp"
#include "frac/core_numerics.hpp"
#include "frac/fourier.hpp"
#include "frac/io.hpp"
#include "frac/operators.hpp"
#include "frac/report.hpp"
#include "frac/spaces.hpp"
#include "frac/verifier.hpp"
