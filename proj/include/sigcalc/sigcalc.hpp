#pragma once

// Umbrella header.

#include "sigcalc/dlp.hpp"
#include "sigcalc/errors.hpp"
#include "sigcalc/gf.hpp"
#include "sigcalc/ints.hpp"
#include "sigcalc/lift.hpp"
#include "sigcalc/modarith.hpp"
#include "sigcalc/pipeline.hpp"
#include "sigcalc/primes.hpp"
#include "sigcalc/quad.hpp"
#include "sigcalc/rng.hpp"
#include "sigcalc/verify.hpp"
