// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace insector {

// Contiguous beamspace band [first, last] of an N-dimensional grid whose
// width divides N.
class Sector {
public:
    Sector(int first, int last, int ambient);

    // The index-th of n_sectors equal-width sectors tiling [0, N).
    static Sector tile(int ambient, int n_sectors, int index);

    int first() const { return first_; }
    int last() const { return last_; }
    int ambient() const { return ambient_; }
    int size() const { return last_ - first_ + 1; }
    // rho = N / N_sec
    int ratio() const { return ambient_ / size(); }

    bool contains(int i) const { return i >= first_ && i <= last_; }

    friend bool operator==(const Sector&, const Sector&) = default;

private:
    int first_;
    int last_;
    int ambient_;
};

} // namespace insector
