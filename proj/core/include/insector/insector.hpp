// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "insector/beam_design.hpp"
#include "insector/channel.hpp"
#include "insector/config.hpp"
#include "insector/dft.hpp"
#include "insector/evaluation.hpp"
#include "insector/recovery.hpp"
#include "insector/sampling.hpp"
#include "insector/sector.hpp"
#include "insector/serialize.hpp"
#include "insector/types.hpp"
