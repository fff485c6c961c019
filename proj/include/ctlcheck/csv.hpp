// Copyright 2026 The ctlcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "ctlcheck/signal_model.hpp"

namespace ctlcheck {

// Trace CSV format: header "t,<var1>,<var2>,...", one row per sample,
// decimal floats, time in seconds.

RawTrace read_raw_csv(const std::string& path);
void write_raw_csv(const RawTrace& trace, const std::string& path);

std::string format_double(double v);

}  // namespace ctlcheck
