#!/usr/bin/env python3
"""Regenerate the polygonal sample meshes under data/meshes/.

Voronoi diagrams are built with scipy from seeds mirrored across the
bounding box (so every cell of an interior seed is bounded) and clipped to
the domain with shapely. Shared vertices are merged on a 1e-9 grid and
boundary vertices are those lying on the domain outline.

    python3 scripts/make_sample_meshes.py [outdir]
"""

import sys
from pathlib import Path

import numpy as np
from scipy.spatial import Voronoi
from shapely.geometry import Point, Polygon
from shapely.geometry.polygon import orient

UNIT_SQUARE = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
L_DOMAIN = Polygon([(-1, -1), (1, -1), (1, 0), (0, 0), (0, 1), (-1, 1)])


def mirrored(seeds, xmin, xmax, ymin, ymax):
    out = [seeds]
    for axis, lo, hi in ((0, xmin, xmax), (1, ymin, ymax)):
        for edge in (lo, hi):
            m = seeds.copy()
            m[:, axis] = 2 * edge - m[:, axis]
            out.append(m)
    return np.vstack(out)


def voronoi_cells(seeds, domain):
    xmin, ymin, xmax, ymax = domain.bounds
    vor = Voronoi(mirrored(seeds, xmin, xmax, ymin, ymax))
    cells = []
    for k in range(len(seeds)):
        region = vor.regions[vor.point_region[k]]
        if -1 in region or not region:
            raise RuntimeError("unbounded cell for seed %d" % k)
        cell = Polygon(vor.vertices[region]).intersection(domain)
        if cell.geom_type != "Polygon" or cell.area < 1e-12:
            raise RuntimeError("cell %d clipped to %s" % (k, cell.geom_type))
        cells.append(orient(cell, 1.0))
    return cells


def lloyd(seeds, domain, iterations):
    for _ in range(iterations):
        cells = voronoi_cells(seeds, domain)
        seeds = np.array([[c.centroid.x, c.centroid.y] for c in cells])
    return seeds


def sample_seeds(domain, count, rng):
    xmin, ymin, xmax, ymax = domain.bounds
    seeds = []
    while len(seeds) < count:
        p = rng.uniform((xmin, ymin), (xmax, ymax))
        if domain.contains(Point(p)) and domain.exterior.distance(Point(p)) > 1e-3:
            seeds.append(p)
    return np.array(seeds)


def to_mesh(cells, domain):
    index = {}
    vertices = []
    elements = []
    for cell in cells:
        loop = []
        for x, y in list(cell.exterior.coords)[:-1]:
            key = (round(x, 9), round(y, 9))
            if key not in index:
                index[key] = len(vertices)
                vertices.append((x, y))
            vid = index[key]
            if not loop or loop[-1] != vid:
                loop.append(vid)
        if loop[0] == loop[-1]:
            loop.pop()
        elements.append(loop)
    outline = domain.exterior
    boundary = [i for i, v in enumerate(vertices) if outline.distance(Point(v)) < 1e-9]
    return vertices, elements, boundary


def write(path, vertices, elements, boundary, comment):
    with open(path, "w") as f:
        f.write("# %s\n" % comment)
        f.write("vertices %d\n" % len(vertices))
        for x, y in vertices:
            f.write("%.17g %.17g\n" % (x, y))
        f.write("elements %d\n" % len(elements))
        for e in elements:
            f.write("%d %s\n" % (len(e), " ".join(map(str, e))))
        f.write("boundary %d\n" % len(boundary))
        for k in range(0, len(boundary), 16):
            f.write(" ".join(map(str, boundary[k:k + 16])) + "\n")
    print("wrote %s: %d vertices, %d elements" % (path, len(vertices), len(elements)))


def main():
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "data/meshes")
    outdir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(2016)

    seeds = sample_seeds(UNIT_SQUARE, 128, rng)
    write(outdir / "voronoi.mesh", *to_mesh(voronoi_cells(seeds, UNIT_SQUARE), UNIT_SQUARE),
          "Voronoi mesh of the unit square, 128 random seeds")

    smooth = lloyd(seeds, UNIT_SQUARE, 30)
    write(outdir / "smoothed_voronoi.mesh",
          *to_mesh(voronoi_cells(smooth, UNIT_SQUARE), UNIT_SQUARE),
          "Lloyd-smoothed Voronoi mesh of the unit square, 128 seeds, 30 iterations")

    lseeds = lloyd(sample_seeds(L_DOMAIN, 300, rng), L_DOMAIN, 30)
    write(outdir / "l_domain.mesh", *to_mesh(voronoi_cells(lseeds, L_DOMAIN), L_DOMAIN),
          "Lloyd-smoothed Voronoi mesh of [-1,1]^2 minus (0,1]^2, 300 seeds")


if __name__ == "__main__":
    main()
