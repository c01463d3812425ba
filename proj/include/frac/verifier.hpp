#pragma once

#include "frac/verifier/common.hpp"
#include "frac/verifier/density.hpp"
#include "frac/verifier/extensions.hpp"
#include "frac/verifier/identities.hpp"
#include "frac/verifier/inequalities.hpp"
#include "frac/verifier/suite.hpp"
