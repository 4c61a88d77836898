// Copyright 2026 The attrdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "attrdp/accounting.hpp"
#include "attrdp/attribute_db.hpp"
#include "attrdp/audit.hpp"
#include "attrdp/config_io.hpp"
#include "attrdp/errors.hpp"
#include "attrdp/estimation.hpp"
#include "attrdp/mechanism.hpp"
#include "attrdp/number_format.hpp"
#include "attrdp/prf.hpp"
#include "attrdp/sweep.hpp"
#include "attrdp/synthesis_manifest.hpp"
