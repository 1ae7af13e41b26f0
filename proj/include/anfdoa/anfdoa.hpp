// SPDX-License-Identifier: Apache-2.0
//
// anfdoa - multi-transmitter separation and DoA estimation with adaptive notch filters
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ANFDOA_ANFDOA_HPP
#define ANFDOA_ANFDOA_HPP

#include "anfdoa/anf.hpp"
#include "anfdoa/bench.hpp"
#include "anfdoa/config.hpp"
#include "anfdoa/doa.hpp"
#include "anfdoa/iq.hpp"
#include "anfdoa/isolation.hpp"
#include "anfdoa/pipeline.hpp"
#include "anfdoa/report.hpp"
#include "anfdoa/sim.hpp"
#include "anfdoa/snapshot.hpp"
#include "anfdoa/spectrum.hpp"

#endif
