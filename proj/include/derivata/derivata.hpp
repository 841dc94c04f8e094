// Copyright 2026 The Derivata Authors
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

#ifndef DERIVATA_DERIVATA_HPP
#define DERIVATA_DERIVATA_HPP

#include "derivata/analysis.hpp"
#include "derivata/corpus.hpp"
#include "derivata/errors.hpp"
#include "derivata/fixture.hpp"
#include "derivata/pipeline.hpp"
#include "derivata/report.hpp"
#include "derivata/reproduce.hpp"
#include "derivata/sections.hpp"
#include "derivata/segmenter.hpp"
#include "derivata/similarity.hpp"
#include "derivata/stats.hpp"
#include "derivata/tokenizer.hpp"

#endif  // DERIVATA_DERIVATA_HPP
