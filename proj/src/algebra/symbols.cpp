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

#include "singdeg/algebra/symbols.hpp"

#include <array>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace singdeg {
namespace {

struct SymbolTable {
    std::mutex mu;
    std::deque<std::string> names;  // deque keeps references stable
    std::unordered_map<std::string, VarId> ids;

    SymbolTable() {
        for (const char* r : {"x0", "x1", "x2", "z", "u", "n"}) {
            ids.emplace(r, static_cast<VarId>(names.size()));
            names.emplace_back(r);
        }
    }
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

}  // namespace

VarId intern(std::string_view name) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    std::string key(name);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) return it->second;
    const auto id = static_cast<VarId>(t.names.size());
    t.names.push_back(key);
    t.ids.emplace(std::move(key), id);
    return id;
}

const std::string& symbol_name(VarId id) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    if (id >= t.names.size()) throw std::out_of_range("unknown symbol id");
    return t.names[id];
}

bool is_interned(std::string_view name) {
    auto& t = table();
    std::lock_guard lock(t.mu);
    return t.ids.count(std::string(name)) != 0;
}

namespace sym {
VarId x0() { return 0; }
VarId x1() { return 1; }
VarId x2() { return 2; }
VarId z() { return 3; }
VarId u() { return 4; }
VarId n() { return 5; }
}  // namespace sym

bool is_reserved_symbol(std::string_view name) {
    static constexpr std::array<std::string_view, 7> kReserved = {"x0", "x1", "x2", "z", "u", "n", "eps"};
    for (auto r : kReserved)
        if (r == name) return true;
    return false;
}

}  // namespace singdeg
