"""Subtriangles of the TRIP partition, with exact vertices.

The level-one cell of digit k is the triangle spanned by the columns of
B F1^k F0.  Deeper cells nest: the cell with digit path (k1, ..., kd) is
spanned by the columns of B (F1^k1 F0) ... (F1^kd F0).
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .trip import B, build_F


@dataclass(frozen=True)
class Cell:
    path: tuple
    vertices: tuple  # three (x, y) pairs of Fractions

    def contains(self, x, y):
        """Strict interior test by barycentric signs."""
        (x1, y1), (x2, y2), (x3, y3) = self.vertices
        d = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1)
        s1 = (x2 - x) * (y3 - y) - (x3 - x) * (y2 - y)
        s2 = (x3 - x) * (y1 - y) - (x1 - x) * (y3 - y)
        s3 = (x1 - x) * (y2 - y) - (x2 - x) * (y1 - y)
        if d > 0:
            return s1 > 0 and s2 > 0 and s3 > 0
        return s1 < 0 and s2 < 0 and s3 < 0


def _vertices(M):
    out = []
    for j in range(3):
        z, x, y = M[0, j], M[1, j], M[2, j]
        out.append((Fraction(x, z), Fraction(y, z)))
    return tuple(out)


def partition_cells(spec, depth=1, per_level=8):
    """Cells for every digit path of length ``depth`` with digits below ``per_level``."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    F0, F1 = build_F(spec)
    branch = [F1**k @ F0 for k in range(per_level)]
    cells = []
    for path in itertools.product(range(per_level), repeat=depth):
        M = B
        for k in path:
            M = M @ branch[k]
        cells.append(Cell(path, _vertices(M)))
    return cells


def render_svg(cells, size=480):
    pad = 10
    s = size - 2 * pad

    def px(v):
        x, y = v
        return f"{pad + float(x) * s:.3f},{pad + (1 - float(y)) * s:.3f}"

    polys = []
    for c in cells:
        pts = " ".join(px(v) for v in c.vertices)
        label = "-".join(map(str, c.path))
        polys.append(
            f'  <polygon points="{pts}" fill="none" stroke="black" stroke-width="0.5"><title>{label}</title></polygon>'
        )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">\n'
        + "\n".join(polys)
        + "\n</svg>\n"
    )


__all__ = ["Cell", "partition_cells", "render_svg"]
