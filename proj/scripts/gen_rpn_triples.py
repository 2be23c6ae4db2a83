#!/usr/bin/env python3
"""Generate the bundled 6-point projective-plane dataset.

Points are lines through the origin in R^3; the distance between two lines
with unit representatives u, v is arccos(|<u, v>|), so a closed geodesic
has length pi. The first triple lies on one closed geodesic (three coplanar
lines at 60 degrees), the second does not (a non-coplanar configuration
with the same pairwise distance pi/3). The two triples are isometric but
no isometry of the 6-point space carries one to the other.
"""
import json
import math
import os

SQ3 = math.sqrt(3.0)

# triple on a closed geodesic: lines in the xy-plane at angles 0, 60, 120 deg
geodesic = [
    (1.0, 0.0, 0.0),
    (0.5, SQ3 / 2.0, 0.0),
    (-0.5, SQ3 / 2.0, 0.0),
]

# triple off the geodesic: |<u,v>| = 1/2 pairwise but not coplanar, rotated
# about the axis (1,1,1) by 40 degrees so that all six lines are distinct
off_geodesic = [
    (1.0, 0.0, 0.0),
    (0.5, SQ3 / 2.0, 0.0),
    (0.5, 1.0 / (2.0 * SQ3), math.sqrt(2.0 / 3.0)),
]


def rotate(u, ang):
    ax = [1.0 / SQ3] * 3
    c, s = math.cos(ang), math.sin(ang)
    dot = sum(a * b for a, b in zip(ax, u))
    cross = (ax[1] * u[2] - ax[2] * u[1], ax[2] * u[0] - ax[0] * u[2],
             ax[0] * u[1] - ax[1] * u[0])
    return tuple(u[i] * c + cross[i] * s + ax[i] * dot * (1.0 - c) for i in range(3))


points = geodesic + [rotate(u, math.radians(40.0)) for u in off_geodesic]
n = len(points)


def dist(u, v):
    dot = abs(sum(a * b for a, b in zip(u, v)))
    return math.acos(min(1.0, dot))


d = [[dist(points[i], points[j]) if i != j else 0.0 for j in range(n)] for i in range(n)]

out = {"n": n, "kind": "metric", "d": d}
here = os.path.dirname(os.path.abspath(__file__))
path = os.path.join(here, "..", "data", "rpn_triples.json")
with open(path, "w") as f:
    json.dump(out, f, indent=2)
    f.write("\n")
print("wrote", os.path.normpath(path))
for row in d:
    print(" ".join(f"{x:.12f}" for x in row))
