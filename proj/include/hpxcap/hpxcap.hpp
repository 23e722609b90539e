// Copyright 2026 The hpxcap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the hpxcap library.

#ifndef HPXCAP_HPXCAP_HPP_
#define HPXCAP_HPXCAP_HPP_

#include "hpxcap/curvature.hpp"
#include "hpxcap/curve.hpp"
#include "hpxcap/decomposition.hpp"
#include "hpxcap/discrepancy.hpp"
#include "hpxcap/errors.hpp"
#include "hpxcap/geometry.hpp"
#include "hpxcap/lattice.hpp"
#include "hpxcap/pixel_count.hpp"
#include "hpxcap/polynomial.hpp"
#include "hpxcap/projection.hpp"
#include "hpxcap/rng.hpp"
#include "hpxcap/tessellation.hpp"

#endif  // HPXCAP_HPXCAP_HPP_
