#pragma once

namespace wedge {

// Sign of det[b-a, c-a]: +1 counter-clockwise, -1 clockwise, 0 collinear.
// Floating-point filter with an exact rational fallback; the sign is exact.
int orient2d(const double* a, const double* b, const double* c);

// Sign of det[a-d, b-d, c-d]. Positive when d lies below the plane through
// a, b, c oriented counter-clockwise when seen from above.
int orient3d(const double* a, const double* b, const double* c, const double* d);

}  // namespace wedge
