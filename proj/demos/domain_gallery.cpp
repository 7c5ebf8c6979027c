// Prints the fundamental domain for one instance per region: bounding box,
// corner cuts, area and the ordered boundary polygon.

#include <cstdio>

#include "levy2d/fundamental_domain.hpp"
#include "levy2d/verify.hpp"

int main() {
  using namespace levy2d;
  for (const auto& inst : canonical_instances()) {
    const RectilinearDomain f = fundamental_domain(inst.a, inst.b);
    std::printf("a = (%g, %g), b = %g   region %s\n", inst.a.a1, inst.a.a2, inst.b,
                region_name(classify_region(inst.a)));
    std::printf("  rectangle [%.6f, %.6f] x [%.6f, %.6f]\n", f.x_min, f.x_max,
                f.y_min, f.y_max);
    for (const auto& c : f.cuts) {
      const char* name[] = {"NW", "NE", "SW", "SE"};
      std::printf("  cut %s at (%.6f, %.6f)\n", name[static_cast<int>(c.q)], c.x,
                  c.y);
    }
    std::printf("  area %.12f (formula %.12f)\n", f.area(), 1.0 - inst.a.a1 * inst.b);
    std::printf("  boundary:");
    for (const auto& v : f.boundary_vertices()) std::printf(" (%.4f,%.4f)", v[0], v[1]);
    std::printf("\n\n");
  }
  return 0;
}
