#pragma once

// Umbrella header.

#include "catalab/adaptation.hpp"
#include "catalab/affine.hpp"
#include "catalab/bits.hpp"
#include "catalab/encoding.hpp"
#include "catalab/errors.hpp"
#include "catalab/instances.hpp"
#include "catalab/laws.hpp"
#include "catalab/meter.hpp"
#include "catalab/scenario.hpp"
#include "catalab/serialize.hpp"
#include "catalab/solvers.hpp"
#include "catalab/substrate.hpp"
#include "catalab/thermo.hpp"
#include "catalab/vm.hpp"
