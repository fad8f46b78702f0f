#pragma once

#include "qwbandit/agent.hpp"
#include "qwbandit/casino.hpp"
#include "qwbandit/config.hpp"
#include "qwbandit/experiment.hpp"
#include "qwbandit/metrics.hpp"
#include "qwbandit/oracles.hpp"
#include "qwbandit/random.hpp"
#include "qwbandit/walk.hpp"
