/*
 * Copyright 2026 The Mirage Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Umbrella header.

#pragma once

#include "mirage/config.hpp"
#include "mirage/curve.hpp"
#include "mirage/emergence.hpp"
#include "mirage/errors.hpp"
#include "mirage/ingest.hpp"
#include "mirage/metrics.hpp"
#include "mirage/parallel.hpp"
#include "mirage/plot.hpp"
#include "mirage/presets.hpp"
#include "mirage/random.hpp"
#include "mirage/scaling.hpp"
#include "mirage/sequence.hpp"
#include "mirage/simulate.hpp"
#include "mirage/svg.hpp"
