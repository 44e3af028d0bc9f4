/*
 * Copyright 2026 The negsolve Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "negsolve/analysis.hpp"
#include "negsolve/atm.hpp"
#include "negsolve/attractor.hpp"
#include "negsolve/error.hpp"
#include "negsolve/gamegraph.hpp"
#include "negsolve/generator.hpp"
#include "negsolve/io.hpp"
#include "negsolve/model.hpp"
#include "negsolve/reductions.hpp"
#include "negsolve/semantics.hpp"
