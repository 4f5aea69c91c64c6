#include "nearforest/rpf_kernel.hpp"

#include "nearforest/errors.hpp"

namespace nearforest::rpf {

MultiGraph reduce_to_min_degree3(MultiGraph g) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v : g.vertices()) {
      if (!g.contains(v)) continue;
      const int deg = g.degree(v);
      if (deg <= 1) {
        g.delete_vertex(v);
        changed = true;
      } else if (deg == 2 && g.loops(v) == 0) {
        g.bypass_degree2(v);
        changed = true;
      }
    }
  }
  return g;
}

long degree_cap_for(int k, int r) { return static_cast<long>(k + r) * (3 * r + 8); }

KernelReport certify_bounds(const MultiGraph& g, int k, int r, int degree_cap) {
  if (k < 0 || r < 0 || degree_cap < 0) throw PreconditionError("certify_bounds: negative parameter");
  if (g.max_degree() > degree_cap) throw PreconditionError("certify_bounds: maximum degree exceeds the cap");

  KernelReport report;
  report.n = static_cast<long>(g.vertex_count());
  report.m = static_cast<long>(g.edge_count());
  report.degree_cap = degree_cap;
  report.k = k;
  report.r = r;
  const long d = degree_cap;
  report.vertex_bound = (2 * d * r - d + 1) * k;
  report.edge_bound = 3L * k * d * r - static_cast<long>(k) * d;
  report.within_bounds = report.n <= report.vertex_bound && report.m <= report.edge_bound;
  if (r == 0)
    report.verdict = KernelVerdict::uncertified;
  else
    report.verdict = report.within_bounds ? KernelVerdict::within_bounds : KernelVerdict::certified_no_or_violation;
  return report;
}

}  // namespace nearforest::rpf
