#include "rds/cantor.hpp"

namespace rds {

TransportSegment transport_segment(const GridCantorSet& sa, const CantorBlock& a,
                                   const GridCantorSet& sb, const CantorBlock& b) {
  auto plan = std::make_shared<const TransportPlan>(sa, a, sb, b);
  return TransportSegment{plan->source_lo(), plan->target_lo(), plan->source_hi(),
                          plan->target_hi(), plan, false};
}

MonotoneMap order_homeo(const GridCantorSet& sa, const CantorBlock& a, const GridCantorSet& sb,
                        const CantorBlock& b) {
  return MonotoneMap::from_segments({transport_segment(sa, a, sb, b)});
}

}  // namespace rds
