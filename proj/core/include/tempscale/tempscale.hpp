#pragma once

#include "tempscale/errors.hpp"
#include "tempscale/kernels.hpp"
#include "tempscale/models.hpp"
#include "tempscale/normalization.hpp"
#include "tempscale/pipeline.hpp"
#include "tempscale/quadrature.hpp"
#include "tempscale/scalespace.hpp"
#include "tempscale/scaletime.hpp"
#include "tempscale/selection.hpp"
#include "tempscale/spatiotemporal.hpp"
#include "tempscale/stream.hpp"
