#pragma once

#include "nearforest/multigraph.hpp"

namespace nearforest::rpf {

enum class KernelVerdict {
  within_bounds,
  // Too large for a deletion set of size k: a certified no-instance, or a
  // bound violation if a size-k solution is known to exist.
  certified_no_or_violation,
  // r = 0 lies outside the counting argument; sizes are reported only.
  uncertified,
};

struct KernelReport {
  long n = 0;
  long m = 0;
  int degree_cap = 0;
  int k = 0;
  int r = 0;
  long vertex_bound = 0;  // (2dr - d + 1) k
  long edge_bound = 0;    // 3kdr - kd
  bool within_bounds = false;
  KernelVerdict verdict = KernelVerdict::uncertified;
};

// Drops vertices of degree at most 1 and bypasses loop-free degree-2
// vertices until neither applies. A lone vertex carrying a loop has degree 2
// and stays.
MultiGraph reduce_to_min_degree3(MultiGraph g);

// Vertex/edge bounds for a graph of minimum degree 3 and maximum degree at
// most degree_cap that has a deletion set of size k. Throws
// PreconditionError when the maximum degree exceeds the cap.
KernelReport certify_bounds(const MultiGraph& g, int k, int r, int degree_cap);

// (k + r)(3r + 8).
long degree_cap_for(int k, int r);

}  // namespace nearforest::rpf
