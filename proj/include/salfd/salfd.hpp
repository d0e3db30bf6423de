#pragma once

// Everything except the HTTP layer (salfd/service.hpp).
#include "salfd/types.hpp"
#include "salfd/catalog.hpp"
#include "salfd/assembly.hpp"
#include "salfd/plan.hpp"
#include "salfd/plan_json.hpp"
#include "salfd/sensor.hpp"
#include "salfd/keyframe.hpp"
#include "salfd/extraction.hpp"
#include "salfd/verification.hpp"
#include "salfd/fixtures.hpp"
#include "salfd/pipeline.hpp"
#include "salfd/metrics.hpp"
