#pragma once

#include "polignac/admissible.hpp"
#include "polignac/census_io.hpp"
#include "polignac/checked.hpp"
#include "polignac/errors.hpp"
#include "polignac/format.hpp"
#include "polignac/ipset.hpp"
#include "polignac/pipeline.hpp"
#include "polignac/primes.hpp"
#include "polignac/ramsey.hpp"
#include "polignac/streams.hpp"
