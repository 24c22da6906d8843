// Copyright 2026 The friendlab Authors
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

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace friendlab::cli {

using Json = nlohmann::ordered_json;

/// Formats a double with 17 significant digits so it round-trips exactly.
inline std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline void indent(std::ostream& os, int depth) {
    for (int i = 0; i < depth; ++i) os << "  ";
}

inline void write_json(std::ostream& os, const Json& j, int depth) {
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                indent(os, depth + 1);
                os << Json(it.key()).dump() << ": ";
                write_json(os, it.value(), depth + 1);
                os << (i + 1 < j.size() ? ",\n" : "\n");
            }
            indent(os, depth);
            os << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                indent(os, depth + 1);
                write_json(os, j[i], depth + 1);
                os << (i + 1 < j.size() ? ",\n" : "\n");
            }
            indent(os, depth);
            os << "]";
            return;
        }
        case Json::value_t::number_float: os << format_double(j.get<double>()); return;
        default: os << j.dump();
    }
}

}  // namespace detail

/// Pretty-prints `j` with two-space indentation and %.17g floats.
inline void write_json(std::ostream& os, const Json& j) {
    detail::write_json(os, j, 0);
    os << "\n";
}

inline std::string to_json_text(const Json& j) {
    std::ostringstream os;
    write_json(os, j);
    return os.str();
}

}  // namespace friendlab::cli
