#pragma once

#include "polarforge/analysis.hpp"
#include "polarforge/channel.hpp"
#include "polarforge/common.hpp"
#include "polarforge/construction.hpp"
#include "polarforge/crc.hpp"
#include "polarforge/decode.hpp"
#include "polarforge/polar.hpp"
#include "polarforge/rate_match.hpp"
#include "polarforge/sim.hpp"
