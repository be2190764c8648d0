#pragma once

#include <memory>

#include "rds/cantor_set.hpp"
#include "rds/monotone_map.hpp"
#include "rds/transport_plan.hpp"

namespace rds {

/// Increasing homeomorphism of the hull of block `a` of `sa` onto the hull of
/// block `b` of `sb` carrying a's Cantor part onto b's, as a single transport
/// segment with slope-1 tails through the block ends.
MonotoneMap order_homeo(const GridCantorSet& sa, const CantorBlock& a, const GridCantorSet& sb,
                        const CantorBlock& b);

/// The transport segment of such a map.
TransportSegment transport_segment(const GridCantorSet& sa, const CantorBlock& a,
                                   const GridCantorSet& sb, const CantorBlock& b);

}  // namespace rds
