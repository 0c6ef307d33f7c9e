// Copyright 2026 The Progressive Hiding Authors
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

#ifndef PHIDE_TEXT_FORMAT_H_
#define PHIDE_TEXT_FORMAT_H_

#include <string>

#include "phide/zoo.h"

namespace phide {

// Declarative text form of a game and its maps:
//
//   game <name>
//   players <P>
//   stage <i> player <p> actions <A>          (one line per stage)
//   state <weight> <k> <component>...         (one line per Nature state)
//   reward <h> <r_0> ... <r_{P-1}>            (one line per history)
//   map <name>
//   reveals <i> <k> (n<index> | a<stage>)...  (or)
//   table <i> <k> <label>...                  (one line per stage)
//   end
//
// Names may not contain whitespace. Numbers are written in shortest
// round-trip form, so parsing restores equal in-memory structures.
std::string SerializeGame(const GameWithMaps& bundle);

// Throws InvalidArgument with the offending line on malformed input.
GameWithMaps ParseGame(const std::string& text);

}  // namespace phide

#endif  // PHIDE_TEXT_FORMAT_H_
