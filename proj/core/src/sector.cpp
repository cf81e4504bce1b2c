// SPDX-License-Identifier: Apache-2.0
#include "insector/sector.hpp"

#include <string>

#include "insector/types.hpp"

namespace insector {

Sector::Sector(int first, int last, int ambient) : first_(first), last_(last), ambient_(ambient) {
    if (!(0 <= first && first < last && last < ambient))
        throw ConfigError("sector [" + std::to_string(first) + ", " + std::to_string(last) +
                          "] invalid for N = " + std::to_string(ambient));
    if (ambient % size() != 0)
        throw ConfigError("sector width " + std::to_string(size()) + " does not divide N = " +
                          std::to_string(ambient));
}

Sector Sector::tile(int ambient, int n_sectors, int index) {
    if (n_sectors < 1 || ambient % n_sectors != 0)
        throw ConfigError("N = " + std::to_string(ambient) + " not divisible into " +
                          std::to_string(n_sectors) + " sectors");
    if (index < 0 || index >= n_sectors) throw IndexError("sector index out of range");
    const int width = ambient / n_sectors;
    return Sector(index * width, (index + 1) * width - 1, ambient);
}

} // namespace insector
