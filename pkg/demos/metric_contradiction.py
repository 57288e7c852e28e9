# Why the choice of metric matters on a spiral.
#
# Two points sitting on adjacent turns of the spiral are a hair apart in the
# plane but dozens of arc-length units apart along the curve.  A novelty
# score built on the Euclidean metric treats them as neighbors; the geodesic
# metric does not.

import math

from spiralns import (
    SpiralParams,
    euclidean_distance,
    geodesic_distance,
    spiral_point,
)

params = SpiralParams()  # a = 0.01, t in [0, 30*pi]

t1, t2 = 20 * math.pi, 22 * math.pi  # one full turn apart, same ray
p1, p2 = spiral_point(t1, params), spiral_point(t2, params)

d_euc = euclidean_distance(p1, p2)
d_geo = geodesic_distance(p1, p2, params)

print(f"p1 = ({p1.x:+.4f}, {p1.y:+.4f})   at t = 20*pi")
print(f"p2 = ({p2.x:+.4f}, {p2.y:+.4f})   at t = 22*pi")
print(f"euclidean distance: {d_euc:.4f}   (the gap between turns, 2*pi*a)")
print(f"geodesic distance:  {d_geo:.4f}   (a full lap along the curve)")
print(f"ratio: {d_geo / d_euc:.1f}x")

# The same contradiction in the other direction: the same arc-length step
# spans a much smaller straight-line distance on the tight inner turns than
# out on the rim, so euclidean novelty systematically under-prices them.
print()
print("fixed 2.0 arc-length step, measured straight-line:")
from spiralns import arc_length_from_origin, invert_arc_length

for t in (2 * math.pi, 10 * math.pi, 20 * math.pi, 28 * math.pi):
    s = arc_length_from_origin(t, params)
    t_next = invert_arc_length(s + 2.0, params)
    d = euclidean_distance(spiral_point(t, params), spiral_point(t_next, params))
    print(f"  from t = {t / math.pi:4.0f}*pi   euclidean = {d:.4f}")
