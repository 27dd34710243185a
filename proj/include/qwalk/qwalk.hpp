#pragma once

#include "qwalk/walk_core.hpp"
#include "qwalk/evolution_direct.hpp"
#include "qwalk/evolution_fourier.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/entropy.hpp"
#include "qwalk/io.hpp"
#include "qwalk/experiment.hpp"
