#pragma once

// Umbrella header.

#include "pwflow/boussinesq.hpp"
#include "pwflow/calculus.hpp"
#include "pwflow/errors.hpp"
#include "pwflow/flow_field.hpp"
#include "pwflow/flows.hpp"
#include "pwflow/forcing.hpp"
#include "pwflow/model.hpp"
#include "pwflow/residuals.hpp"
#include "pwflow/sampling.hpp"
#include "pwflow/vec.hpp"
#include "pwflow/wave_shape.hpp"
