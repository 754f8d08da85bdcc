/*
   Copyright 2026 The singdeg Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace singdeg {

using VarId = std::uint32_t;

// Process-wide symbol table. Ids are assigned on first use and never change;
// lower ids are more significant in the monomial order. The reserved symbols
// below are interned first so their ids are stable across runs.
VarId intern(std::string_view name);
const std::string& symbol_name(VarId id);
bool is_interned(std::string_view name);

namespace sym {
VarId n();   // iteration index
VarId u();   // generic free value x_{n-1} before a singularity
VarId z();   // free initial value x_1
VarId x0();  // x_{n-1}
VarId x1();  // x_n
VarId x2();  // x_{n+1}
}  // namespace sym

// Reserved names that cannot be declared as parameters.
bool is_reserved_symbol(std::string_view name);

}  // namespace singdeg
