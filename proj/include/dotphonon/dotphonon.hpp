// Umbrella header

#pragma once

#include "dotphonon/bath.hpp"
#include "dotphonon/error.hpp"
#include "dotphonon/linalg3.hpp"
#include "dotphonon/presets.hpp"
#include "dotphonon/qubit_model.hpp"
#include "dotphonon/redfield.hpp"
#include "dotphonon/sweep.hpp"
#include "dotphonon/units.hpp"
