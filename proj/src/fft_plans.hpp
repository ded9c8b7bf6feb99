#pragma once

// Internal FFTW plan cache. Plans are created once per grid shape under a
// mutex and reused via the new-array execute interface; every call owns its
// buffers, so concurrent transforms on any grids are safe.

#include <fftw3.h>

#include <memory>
#include <mutex>

namespace homog::detail {

struct PlanSet {
    int n1 = 0;  // fast dimension (x1)
    int n2 = 0;  // slow dimension (x2)
    fftw_plan c2c_fwd = nullptr;
    fftw_plan c2c_bwd = nullptr;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    ~PlanSet();
};

/// Plans for an n1 x n2 grid (index = j*n1 + i, i fastest).
const PlanSet& plans_for(int n1, int n2);

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using fftw_buffer = std::unique_ptr<T[], FftwDeleter>;

template <class T>
fftw_buffer<T> make_buffer(std::size_t count) {
    return fftw_buffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * count)));
}

}  // namespace homog::detail
