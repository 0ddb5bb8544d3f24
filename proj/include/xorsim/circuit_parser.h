// Copyright 2026 The xorsim Authors
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

#ifndef XORSIM_CIRCUIT_PARSER_H
#define XORSIM_CIRCUIT_PARSER_H

#include <string>
#include <string_view>

#include "xorsim/circuit_graph.h"

namespace xorsim {

/// Parses the line-oriented `.qc` circuit language.
///
/// One statement per line, led by a case-insensitive keyword; `#` starts a comment. Ports are
/// declared by `source` statements and must be declared before use:
///
///     source ideal <port> [angle=A] [sigma=S] [t=T] [family=F]
///     source vacuum <port>
///     source spdc <port1> <port2> p=P [angle=A] [sigma=S] [t=T] [family1=F] [family2=F]
///     source coherent <port> mu=M [angle=A] [sigma=S] [t=T] [family=F]
///     hwp <port> <plate angle>
///     rotate <port> <angle>
///     pbs <port> <port>
///     analyzer <port> <angle>
///     delay <port> <time>
///     detector <name> <port> [threshold|pnr] [eff=E]
///     output <port>...
///     postselect <detector>[=<n>]...
///     overlap <family> <family> <factor>
///     overlap default <factor>
///     scan delay|analyzer <port> <from> <to> <steps>
///
/// Throws CircuitError; the first error in document order wins.
CircuitGraph parse_circuit(std::string_view text);

CircuitGraph parse_circuit_file(const std::string &path);

/// Canonical text; parse_circuit(serialize_circuit(g)) == g for any valid g.
std::string serialize_circuit(const CircuitGraph &graph);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace xorsim

#endif
