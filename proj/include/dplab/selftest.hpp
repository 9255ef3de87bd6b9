// Copyright 2026 The dplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>

namespace dplab {
namespace selftest {

// Fast invariant suite (projection properties, rng moments, loss
// certificate probes, accountant grid audit, rate-fitter planted slopes,
// schedule shapes). Prints one line per check with timing and returns the
// number of failures. `corrupt_l` halves every certified L before the
// certificate probes — a negative control that must make the suite fail.
int run(bool corrupt_l, std::ostream& out);

}  // namespace selftest
}  // namespace dplab
