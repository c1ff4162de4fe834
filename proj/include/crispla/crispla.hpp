// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header.

#pragma once

#include "attack.hpp"
#include "channel.hpp"
#include "color.hpp"
#include "config.hpp"
#include "configuration.hpp"
#include "cris.hpp"
#include "csv.hpp"
#include "geometry.hpp"
#include "noise.hpp"
#include "pla.hpp"
#include "random.hpp"
#include "sim.hpp"
#include "spectral.hpp"
