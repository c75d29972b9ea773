#pragma once

#include "hybesov/field.hpp"

namespace hybesov::fft {

// Unnormalized transforms over n^d points. forward uses e^{-iξx}, backward e^{+iξx}.
// Plans are created once per (d, n, direction) and shared across threads.
void forward(const Grid& g, const cplx* in, cplx* out);
void backward(const Grid& g, const cplx* in, cplx* out);

}  // namespace hybesov::fft
