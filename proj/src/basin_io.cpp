// Copyright 2026 The purify Authors
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

#include <array>
#include <cstdio>
#include <string>

#include "purify/basin.hpp"

namespace purify {

namespace {

constexpr std::array<std::array<unsigned char, 3>, 4> kPalette = {{
    {0, 0, 255},    // bell
    {0, 160, 0},    // separable
    {255, 220, 0},  // mixed
    {0, 0, 0},      // unresolved
}};

}  // namespace

std::string render_ppm(const BasinGrid &grid) {
    std::string out = "P6\n" + std::to_string(grid.spec.width) + " " + std::to_string(grid.spec.height) + "\n255\n";
    out.reserve(out.size() + grid.labels.size() * 3);
    for (BasinLabel label : grid.labels) {
        const auto &rgb = kPalette[static_cast<int>(label)];
        out.append(reinterpret_cast<const char *>(rgb.data()), rgb.size());
    }
    return out;
}

std::string render_csv(const BasinGrid &grid) {
    std::string out = "re,im,label,steps\n";
    char buf[96];
    for (int row = 0; row < grid.spec.height; row++) {
        for (int col = 0; col < grid.spec.width; col++) {
            Complex z = grid.spec.cell_center(col, row).value();
            size_t idx = static_cast<size_t>(row) * grid.spec.width + col;
            std::snprintf(buf, sizeof(buf), "%.9g,%.9g,", z.real(), z.imag());
            out += buf;
            out += to_string(grid.labels[idx]);
            out += ',';
            out += std::to_string(grid.steps[idx]);
            out += '\n';
        }
    }
    return out;
}

}  // namespace purify
