#pragma once

#include "cyc24/cyclotomic_numbers.hpp"
#include "cyc24/harvest.hpp"

#include <cstdint>

namespace cyc24::test {

// Small shared world computed once per test run: enough primes to derive
// one table of each parity (the classes of 73 and 97).
struct SmallWorld {
    ClassTuple cls_odd{1, 1, 4, 2};  // class of p = 73 (f odd)
    ClassTuple cls_even{0, 0, 2, 2}; // class of p = 97 (f even)
    HarvestResult harvest;
    CoeffTable table_odd;
    CoeffTable table_even;
};

inline const SmallWorld& small_world()
{
    static const SmallWorld world = [] {
        SmallWorld w;
        w.harvest = cyc24::harvest(200000, 23, default_jobs(), nullptr, {w.cls_odd, w.cls_even});
        w.table_odd = derive_table(w.cls_odd, w.harvest.class_primes(w.cls_odd));
        w.table_even = derive_table(w.cls_even, w.harvest.class_primes(w.cls_even));
        return w;
    }();
    return world;
}

} // namespace cyc24::test
